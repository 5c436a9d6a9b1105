#include "kitaev/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "kitaev/kernels.hpp"

namespace kitaev {

namespace {

std::size_t grid_index(const std::vector<double>& times, double t) {
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= tol) return k;
    std::ostringstream msg;
    msg << "time " << t << " is not on the coefficient grid";
    throw std::out_of_range(msg.str());
}

}  // namespace

double DensityMatrix::purity() const { return (entries * entries).trace().real(); }

double DensityMatrix::hermiticity_error() const {
    return entries.size() == 0 ? 0.0 : (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    if (entries.size() == 0) return 0.0;
    const Eigen::MatrixXcd h = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ActiveState assemble_state(const std::vector<CoefficientSeries>& coeffs, double t, const FlipConfig& initial,
                           std::optional<double> initial_energy) {
    ActiveState s;
    s.t = t;
    const double e0 = initial_energy ? *initial_energy : (coeffs.empty() ? 0.0 : coeffs.front().E_initial);
    s.labels.push_back(StateLabel(initial));
    s.energies.push_back(e0);
    s.amplitudes.resize(static_cast<Eigen::Index>(coeffs.size() + 1));
    s.amplitudes[0] = std::exp(cplx{0.0, -e0 * t});
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        const auto k = grid_index(coeffs[m].times, t);
        s.labels.push_back(coeffs[m].target);
        s.energies.push_back(coeffs[m].E_target);
        s.amplitudes[static_cast<Eigen::Index>(m + 1)] = coeffs[m].values[k] * std::exp(cplx{0.0, -coeffs[m].E_target * t});
    }
    const double norm = s.amplitudes.norm();
    s.norm_factor = 1.0 / norm;
    s.amplitudes *= s.norm_factor;
    return s;
}

DensityMatrix density_matrix(const std::vector<std::string>& basis, const StateVector& amplitudes) {
    if (!basis.empty() && static_cast<Eigen::Index>(basis.size()) != amplitudes.size())
        throw std::invalid_argument("density_matrix: basis/amplitude size mismatch");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw std::invalid_argument("density_matrix: state is not normalized");
    DensityMatrix rho;
    rho.basis = basis;
    rho.full_hilbert = basis.empty();
    rho.entries = amplitudes * amplitudes.adjoint();
    rho.trace = rho.entries.trace().real();
    return rho;
}

DensityMatrix density_matrix(const ActiveState& state) {
    std::vector<std::string> basis;
    basis.reserve(state.labels.size());
    for (const auto& l : state.labels) basis.push_back(l.id());
    return density_matrix(basis, state.amplitudes);
}

StateVector to_hilbert(const LatticeGeometry& geom, const ActiveState& state, int hilbert_cap) {
    StateVector psi = StateVector::Zero(Eigen::Index{1} << std::min(geom.n_sites(), 62));
    if (geom.n_sites() > hilbert_cap) throw std::length_error("to_hilbert: Hilbert cap exceeded");
    for (std::size_t m = 0; m < state.labels.size(); ++m) {
        const cplx amp = state.amplitudes[static_cast<Eigen::Index>(m)];
        if (amp == cplx{0.0, 0.0}) continue;
        psi += amp * build_product_ket(geom, state.labels[m], hilbert_cap);
    }
    return psi;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho, double floor) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double l = es.eigenvalues()[k];
        if (l > floor) s -= l * std::log(l);
    }
    return std::max(s, 0.0);
}

ReducedEntropy reduced_entropy(const StateVector& ket, int n_sites, std::uint64_t keep_mask) {
    if (n_sites < 1 || n_sites > 30 || ket.size() != (Eigen::Index{1} << n_sites))
        throw std::invalid_argument("reduced_entropy: ket dimension does not match 2^n_sites");
    if (std::abs(ket.norm() - 1.0) > 1e-9) throw std::invalid_argument("reduced_entropy: ket is not normalized");
    ReducedEntropy r;
    r.reduced.full_hilbert = true;
    r.reduced.entries = kernels::omp::reduced_density(kernels::view(ket), n_sites, keep_mask);
    r.reduced.trace = r.reduced.entries.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.reduced.entries, Eigen::EigenvaluesOnly);
    r.eigenvalues = es.eigenvalues();
    double s = 0.0;
    for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k) {
        const double l = r.eigenvalues[k];
        if (l > kEntropyEigenvalueFloor) s -= l * std::log(l);
    }
    r.entropy = std::max(s, 0.0);
    return r;
}

std::uint64_t sublattice_mask(const LatticeGeometry& geom, Sublattice part) {
    if (geom.n_sites() > 64) throw std::length_error("sublattice_mask: more than 64 sites");
    std::uint64_t m = 0;
    for (const auto& s : geom.sites)
        if (s.sublattice == part) m |= std::uint64_t{1} << s.id;
    return m;
}

ReducedEntropy reduced_entropy(const LatticeGeometry& geom, const StateVector& ket, Sublattice part, int hilbert_cap) {
    if (geom.n_sites() > hilbert_cap) throw std::length_error("reduced_entropy: Hilbert cap exceeded");
    return reduced_entropy(ket, geom.n_sites(), sublattice_mask(geom, part));
}

cplx observable_expectation(const DensityMatrix& rho, const Eigen::MatrixXcd& op, const std::vector<std::string>& op_basis) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim())
        throw std::invalid_argument("observable_expectation: operator dimension does not match the density matrix");
    if (!op_basis.empty() && op_basis != rho.basis)
        throw std::invalid_argument("observable_expectation: operator basis does not match the density matrix");
    return (rho.entries * op).trace();
}

WeightFunction weight_function_from_string(const std::string& s) {
    if (s == "boltzmann") return WeightFunction::boltzmann;
    if (s == "fermi") return WeightFunction::fermi;
    throw std::invalid_argument("unknown weight function '" + s + "' (expected boltzmann or fermi)");
}

const char* to_string(WeightFunction w) { return w == WeightFunction::boltzmann ? "boltzmann" : "fermi"; }

std::vector<double> thermal_weights(const std::vector<double>& energies, double kT, WeightFunction fn, double mu) {
    if (energies.empty()) throw std::invalid_argument("thermal_weights: no members");
    if (std::isnan(kT) || kT < 0.0) throw std::invalid_argument("thermal_weights: kT must be >= 0 (0 and inf are limits)");
    const std::size_t n = energies.size();
    std::vector<double> w(n, 0.0);
    if (std::isinf(kT)) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
        return w;
    }
    if (fn == WeightFunction::boltzmann) {
        const double e_min = *std::min_element(energies.begin(), energies.end());
        if (kT == 0.0) {
            const double tol = 1e-12 * std::max(1.0, std::abs(e_min));
            for (std::size_t k = 0; k < n; ++k) w[k] = (energies[k] - e_min <= tol) ? 1.0 : 0.0;
        } else {
            for (std::size_t k = 0; k < n; ++k) w[k] = std::exp(-(energies[k] - e_min) / kT);
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const double x = energies[k] - mu;
            if (kT == 0.0)
                w[k] = x < 0 ? 1.0 : (x == 0 ? 0.5 : 0.0);
            else
                w[k] = x > 0 ? std::exp(-x / kT) / (1.0 + std::exp(-x / kT)) : 1.0 / (1.0 + std::exp(x / kT));
        }
    }
    double z = 0.0;
    for (double v : w) z += v;
    if (!(z > 0.0)) throw std::domain_error("thermal_weights: all weights vanish");
    for (double& v : w) v /= z;
    return w;
}

ThermalEnsemble thermal_mix(const std::vector<ThermalMember>& members, double kT, WeightFunction fn, double mu,
                            const std::vector<std::string>& basis) {
    if (members.empty()) throw std::invalid_argument("thermal_mix: empty member list");
    const Eigen::Index dim = members.front().state.size();
    std::vector<double> energies;
    for (const auto& m : members) {
        if (m.state.size() != dim) throw std::invalid_argument("thermal_mix: members do not share a basis");
        energies.push_back(m.energy);
    }
    ThermalEnsemble ens;
    ens.members = members;
    ens.kT = kT;
    ens.weights = thermal_weights(energies, kT, fn, mu);
    ens.rho.basis = basis;
    ens.rho.full_hilbert = basis.empty();
    ens.rho.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (ens.weights[k] == 0.0) continue;
        const StateVector psi = members[k].state / members[k].state.norm();
        ens.rho.entries += ens.weights[k] * (psi * psi.adjoint());
    }
    ens.rho.trace = ens.rho.entries.trace().real();
    return ens;
}

}  // namespace kitaev
