#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/config.hpp"
#include "kitaev/correlation.hpp"
#include "kitaev/density.hpp"
#include "kitaev/phase.hpp"

namespace kitaev {

/// Provenance block written at the top of every output file.
struct OutputHeader {
    std::string command;
    std::string engine;
    const RunConfig* config = nullptr;
    std::vector<std::string> notes;

    /// "# "-prefixed lines: tool version, command, hbar convention, engine, config hash, config.
    std::vector<std::string> lines() const;
    nlohmann::ordered_json to_json() const;
};

std::string hex64(std::uint64_t v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
};

std::string cell(double x);
std::string cell(long long x);
std::string cell(int x);
std::string cell(std::size_t x);
std::string cell(const std::string& s);

std::string render_csv(const OutputHeader& header, const CsvTable& table);
/// The header goes under key "header", ahead of the payload keys.
std::string render_json(const OutputHeader& header, const nlohmann::ordered_json& payload);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& text);

CsvTable coefficient_table(const std::vector<CoefficientSeries>& series);
CsvTable phase_table(const SubGeometricPhaseSeries& phase);
CsvTable interval_table(const std::vector<StabilityInterval>& intervals);
CsvTable correlation_table(const std::vector<CorrelationRecord>& records);
nlohmann::ordered_json density_json(const DensityMatrix& rho);

}  // namespace kitaev
