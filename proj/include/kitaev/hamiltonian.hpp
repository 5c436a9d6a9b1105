#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/kernels.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/manifold.hpp"

namespace kitaev {

/// Exchange couplings and drive parameters; hbar = 1 throughout.
struct CouplingParams {
    double Jx = 1.0;
    double Jy = 1.0;
    double Jz = 1.0;
    double D = 0.0;
    double omega = 0.0;

    double coupling(Component c) const;
    /// Throws std::invalid_argument on non-finite values or D < 0.
    void validate() const;
};

/// "hilbert": exact expectation in the 2^n space (authoritative, small lattices).
/// "label": classical rule on the site labels, valid for any lattice size.
enum class Engine { hilbert, label };

const char* to_string(Engine e);
Engine engine_from_string(const std::string& s);

/// Which part of the Kitaev Hamiltonian to build.
/// full: every bond. secular: only bonds whose two endpoint labels equal the bond
/// component, i.e. the part of H0 that is diagonal in the labeled product basis.
enum class HamiltonianPart { full, secular };

std::vector<kernels::PauliString> h0_terms(const LatticeGeometry& geom, const CouplingParams& params,
                                           HamiltonianPart part = HamiltonianPart::full);

StateVector apply_h0(const LatticeGeometry& geom, const CouplingParams& params, const StateVector& ket);

Eigen::MatrixXcd dense_operator(std::span<const kernels::PauliString> terms, int n_sites,
                                int hilbert_cap = kDefaultHilbertCap);
Eigen::MatrixXcd dense_h0(const LatticeGeometry& geom, const CouplingParams& params,
                          int hilbert_cap = kDefaultHilbertCap);

/// w_p = sigma_1^x sigma_2^y sigma_3^z sigma_4^x sigma_5^y sigma_6^z on plaquette p.
kernels::PauliString plaquette_string(const LatticeGeometry& geom, int p);
/// Drive string on plaquette i: w_p with position 3 replaced by sigma^x.
kernels::PauliString drive_string(const LatticeGeometry& geom, int i);

Eigen::MatrixXcd dense_plaquette(const LatticeGeometry& geom, int p, int hilbert_cap = kDefaultHilbertCap);

/// Projector (1 + w_p)/2 applied to a ket.
StateVector apply_plaquette_projector(const LatticeGeometry& geom, int p, const StateVector& ket);

/// <ket|w_p|ket>; rejects kets whose norm differs from 1 by more than 1e-9.
double plaquette_expectation(const LatticeGeometry& geom, int p, const StateVector& ket);

double state_energy(const LatticeGeometry& geom, const CouplingParams& params, const StateLabel& state,
                    Engine engine, int hilbert_cap = kDefaultHilbertCap);

/// Transition element with B(t) factored out: D * <target| string_i |ground>, where i is
/// the target's flipped plaquette. Full element of H'(t) is B(t) * M / D.
cplx perturbation_element(const LatticeGeometry& geom, const FlipConfig& ground, const ExcitedLabel& target,
                          const CouplingParams& params, Engine engine, int hilbert_cap = kDefaultHilbertCap);

/// <target| string_i |ground> without the D factor.
cplx transition_overlap(const LatticeGeometry& geom, const StateLabel& ground, const ExcitedLabel& target,
                        Engine engine, int hilbert_cap = kDefaultHilbertCap);

/// Energies of every ground config and of every config excited on one drive plaquette.
class EnergyTable {
public:
    struct Row {
        StateLabel state;
        double energy = 0.0;
    };

    static EnergyTable build(const LatticeGeometry& geom, const CouplingParams& params, int drive_plaquette,
                             Engine engine, int hilbert_cap = kDefaultHilbertCap);

    double at(const StateLabel& s) const;
    bool contains(const StateLabel& s) const { return index_.count(s) != 0; }
    const std::vector<Row>& rows() const { return rows_; }
    Engine engine() const { return engine_; }

private:
    std::vector<Row> rows_;
    std::map<StateLabel, std::size_t> index_;
    Engine engine_ = Engine::label;
};

}  // namespace kitaev
