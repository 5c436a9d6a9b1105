#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/perturbation.hpp"

namespace kitaev {

class StepUnderflowError : public std::runtime_error {
public:
    StepUnderflowError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

struct OracleOptions {
    /// Absolute 2-norm error allowed per step (adaptive mode).
    double tol = 1e-9;
    HamiltonianPart part = HamiltonianPart::full;
    int drive_plaquette = 0;
    /// > 0 switches to fixed steps of this size (output times are still hit exactly).
    double fixed_step = 0.0;
    long max_steps = 50'000'000;
    double min_step = 1e-13;
    int hilbert_cap = kDefaultHilbertCap;
};

inline constexpr double kReferenceTol = 1e-12;

struct EvolutionResult {
    std::vector<double> times;
    std::vector<StateVector> kets;
    double norm_drift = 0.0;    // max | ||psi(t)|| - 1 |
    double energy_drift = 0.0;  // max |<H0>(t) - <H0>(0)|, meaningful for undriven runs
    long steps = 0;
    long rejected = 0;
};

/// Integrates i d psi/dt = (H0 + B(t) S_i) psi with Dormand-Prince 5(4), where S_i is the
/// drive string on options.drive_plaquette and B the drive profile. No renormalization.
/// psi0 is the state at times.front(); one ket is returned per entry of `times`.
EvolutionResult exact_evolve(const LatticeGeometry& geom, const CouplingParams& params, const DriveSpec& drive,
                             const StateVector& psi0, const std::vector<double>& times,
                             const OracleOptions& options = {});

/// Active-basis kets with their energies; the first entry is the initial state.
struct ActiveBasis {
    std::vector<std::string> ids;
    std::vector<StateVector> kets;
    std::vector<double> energies;
};

ActiveBasis make_active_basis(const LatticeGeometry& geom, const FlipConfig& initial,
                              const std::vector<CoefficientSeries>& targets, int hilbert_cap = kDefaultHilbertCap);

/// max |<k_i|k_j> - delta_ij|.
double orthonormality_error(const std::vector<StateVector>& kets);

/// First-order prediction aligned to an ActiveBasis: 1 for the initial state, then the series.
std::vector<std::vector<cplx>> tdpt_prediction(const std::vector<CoefficientSeries>& targets, std::size_t n_times);

struct ProjectionRow {
    std::string id;
    std::vector<cplx> exact;
    std::vector<cplx> tdpt;
    double max_error = 0.0;
};

struct ProjectionReport {
    std::vector<ProjectionRow> rows;
    double max_error = 0.0;          // over every row, initial state included
    double max_target_error = 0.0;   // excited targets only
    double orthonormality = 0.0;
};

/// c_exact,m(t) = <basis_m|psi(t)> exp(+i E_m t), compared with the prediction row by row.
/// Throws if the basis is not orthonormal to 1e-10.
ProjectionReport project_and_compare(const EvolutionResult& result, const ActiveBasis& basis,
                                     const std::vector<std::vector<cplx>>& prediction);

struct ScalingPoint {
    double D = 0.0;
    ProjectionReport report;
};

struct ScalingStudy {
    std::vector<ScalingPoint> points;
    /// err(D_k) / err(D_{k+1}) on the all-rows max error.
    std::vector<double> ratios;
};

/// Exponential drive at each D, first-order series from the label engine, exact evolution
/// with `options.part`, projected onto the active basis.
ScalingStudy tdpt_scaling(const LatticeGeometry& geom, const CouplingParams& params, double omega,
                          const FlipConfig& initial, const std::vector<double>& Ds, const std::vector<double>& times,
                          const OracleOptions& options = {});

struct ConvergenceStudy {
    double h = 0.0;
    double error_h = 0.0;
    double error_h2 = 0.0;
    double ratio = 0.0;
    double order = 0.0;
};

/// Fixed-step runs with h and h/2 against an adaptive kReferenceTol reference at t_end.
ConvergenceStudy convergence_order(const LatticeGeometry& geom, const CouplingParams& params, const DriveSpec& drive,
                                   const StateVector& psi0, double t_end, double h, const OracleOptions& options = {});

/// {targets: [{id, max_error, error_vs_D: [[D, err]]}], convergence_order}
nlohmann::json error_report_json(const ScalingStudy& scaling, const ConvergenceStudy* convergence = nullptr);

}  // namespace kitaev
