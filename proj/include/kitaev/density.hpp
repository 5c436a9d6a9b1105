#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/lattice.hpp"
#include "kitaev/perturbation.hpp"

namespace kitaev {

struct DensityMatrix {
    std::vector<std::string> basis;  // empty when full_hilbert
    bool full_hilbert = false;
    Eigen::MatrixXcd entries;
    double trace = 0.0;

    Eigen::Index dim() const { return entries.rows(); }
    double purity() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;
};

/// Evolved state on the active basis at one time: initial config first, then targets.
struct ActiveState {
    double t = 0.0;
    std::vector<StateLabel> labels;
    std::vector<double> energies;
    StateVector amplitudes;
    double norm_factor = 1.0;  // multiplier applied to reach unit norm
};

/// Amplitude of the initial config is exp(-i E_0 t), of each target c_m(t) exp(-i E_m t);
/// the vector is then normalized. `t` must lie on the common grid.
ActiveState assemble_state(const std::vector<CoefficientSeries>& coeffs, double t, const FlipConfig& initial,
                           std::optional<double> initial_energy = std::nullopt);

/// rho_mn = amp_m conj(amp_n); rejects inputs whose norm differs from 1 by more than 1e-10.
DensityMatrix density_matrix(const std::vector<std::string>& basis, const StateVector& amplitudes);
DensityMatrix density_matrix(const ActiveState& state);

/// Embed active-basis amplitudes in the full 2^n space as sum_m amp_m |ket_m>.
StateVector to_hilbert(const LatticeGeometry& geom, const ActiveState& state, int hilbert_cap = kDefaultHilbertCap);

/// Eigenvalues below this contribute nothing to the entropy.
inline constexpr double kEntropyEigenvalueFloor = 1e-14;

double von_neumann_entropy(const Eigen::MatrixXcd& rho, double floor = kEntropyEigenvalueFloor);

struct ReducedEntropy {
    DensityMatrix reduced;
    double entropy = 0.0;
    Eigen::VectorXd eigenvalues;
};

/// Partial trace of |ket><ket| over every site outside keep_mask.
ReducedEntropy reduced_entropy(const StateVector& ket, int n_sites, std::uint64_t keep_mask);
/// Keeps sublattice `part`, traces the other one.
ReducedEntropy reduced_entropy(const LatticeGeometry& geom, const StateVector& ket, Sublattice part,
                               int hilbert_cap = kDefaultHilbertCap);

std::uint64_t sublattice_mask(const LatticeGeometry& geom, Sublattice part);

/// Tr(rho op). A nonempty op_basis must match rho.basis label for label.
cplx observable_expectation(const DensityMatrix& rho, const Eigen::MatrixXcd& op,
                            const std::vector<std::string>& op_basis = {});

enum class WeightFunction { boltzmann, fermi };

WeightFunction weight_function_from_string(const std::string& s);
const char* to_string(WeightFunction w);

/// kT = 0 and kT = +inf are the two limits. Boltzmann weights use a max-shift; the zero
/// limit spreads weight uniformly over the minimal-energy members.
std::vector<double> thermal_weights(const std::vector<double>& energies, double kT,
                                    WeightFunction fn = WeightFunction::boltzmann, double mu = 0.0);

struct ThermalMember {
    double energy = 0.0;
    StateVector state;
};

struct ThermalEnsemble {
    std::vector<ThermalMember> members;
    double kT = 0.0;
    std::vector<double> weights;
    DensityMatrix rho;
};

/// rho = sum_k p_k |psi_k><psi_k| over members sharing one basis.
ThermalEnsemble thermal_mix(const std::vector<ThermalMember>& members, double kT,
                            WeightFunction fn = WeightFunction::boltzmann, double mu = 0.0,
                            const std::vector<std::string>& basis = {});

}  // namespace kitaev
