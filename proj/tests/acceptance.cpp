// Acceptance suite: one PASS/FAIL line per criterion, indented sub-checks below it.
// Tolerances are pinned inside kitaev::run_acceptance.

#include <cstdlib>
#include <iostream>

#include "kitaev/validation.hpp"

int main() {
    const auto report = kitaev::run_acceptance();
    std::cout << report.render() << std::flush;
    return report.all_passed() ? EXIT_SUCCESS : EXIT_FAILURE;
}
