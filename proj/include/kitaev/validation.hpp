#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kitaev {

struct SubCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    /// Reported but not part of the criterion verdict.
    bool diagnostic = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<SubCheck> checks;

    bool passed() const;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;

    bool all_passed() const;
    std::vector<int> failed_ids() const;
    /// One PASS/FAIL line per criterion, then its indented checks.
    std::string render() const;
    nlohmann::json to_json() const;
};

struct AcceptanceOptions {
    std::uint64_t seed = 12345;
    /// Restrict to these criterion ids; empty runs all ten.
    std::vector<int> only;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

}  // namespace kitaev
