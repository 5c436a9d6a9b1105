#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kitaev/oracle.hpp"
#include "kitaev/phase.hpp"

namespace kitaev {

enum class CorrelationEngine { formula, exact };

const char* to_string(CorrelationEngine e);

struct CorrelationRecord {
    int site_i = 0;
    int site_j = 0;
    Component alpha = Component::z;
    Component beta = Component::z;
    double t = 0.0;
    double t0 = 0.0;
    cplx value{0.0, 0.0};
    CorrelationEngine engine = CorrelationEngine::exact;
};

struct FormulaResult {
    cplx value{0.0, 0.0};
    std::vector<cplx> terms;
    /// Every term vanished (for instance t0 = 0 with first-order coefficients).
    bool all_terms_zero = false;
};

/// sum_m A_m(t) A_m(t0) exp(-i (phi_m(t) - phi_m(t0) - E_m t)), hbar = 1. A singular sample
/// contributes a zero term. t and t0 must lie on each series' grid.
FormulaResult correlation_formula(const std::vector<double>& energies,
                                  const std::vector<SubGeometricPhaseSeries>& phases, double t, double t0);
FormulaResult correlation_formula(const std::vector<CoefficientSeries>& coeffs,
                                  const std::vector<SubGeometricPhaseSeries>& phases, double t, double t0);

/// First grid point after zero, the default reference time.
double default_reference_time(const std::vector<double>& times);

struct BondPair {
    int i = 0;
    int j = 0;
    Component component = Component::z;
};

std::vector<BondPair> nearest_neighbor_pairs(const LatticeGeometry& geom);
std::vector<std::pair<Component, Component>> all_component_pairs();

struct SelectionDiagnostic {
    /// Records outside {i = j or bond component == alpha == beta} whose |value| exceeds tol.
    std::size_t violations = 0;
    std::size_t checked = 0;
    double max_forbidden = 0.0;
    bool holds() const { return violations == 0; }
};

struct CorrelationScan {
    std::vector<CorrelationRecord> records;
    SelectionDiagnostic selection;
    double tol = 0.0;
};

/// For every pair and component combination: <psi(t)| U^dag(t) sigma_i^alpha U(t) sigma_j^beta |psi(t)>
/// with U(t) the exact propagator from 0 to t and psi(t) = U(t) psi0.
CorrelationScan correlation_exact_scan(const LatticeGeometry& geom, const CouplingParams& params,
                                       const DriveSpec& drive, const FlipConfig& initial,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       const std::vector<std::pair<Component, Component>>& components, double t,
                                       double tol, const OracleOptions& options = {});

/// Classifies records against the nearest-neighbour, same-component rule.
SelectionDiagnostic selection_rule(const LatticeGeometry& geom, const std::vector<CorrelationRecord>& records,
                                   double tol);

}  // namespace kitaev
