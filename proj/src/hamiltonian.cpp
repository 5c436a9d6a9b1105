#include "kitaev/hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kitaev {

namespace {

void check_cap(int n_sites, int cap, const char* where) {
    if (n_sites > cap) {
        std::ostringstream msg;
        msg << where << ": " << n_sites << " sites exceed the Hilbert cap of " << cap;
        throw std::length_error(msg.str());
    }
}

void check_dim(const LatticeGeometry& geom, const StateVector& ket, const char* where) {
    if (geom.n_sites() >= 63 || ket.size() != (Eigen::Index{1} << geom.n_sites())) {
        std::ostringstream msg;
        msg << where << ": ket dimension " << ket.size() << " does not match 2^" << geom.n_sites();
        throw std::invalid_argument(msg.str());
    }
}

constexpr std::array<Component, 6> kDriveComponents{Component::x, Component::y, Component::x,
                                                    Component::x, Component::y, Component::z};

kernels::PauliString string_on(const LatticeGeometry& geom, int p, const std::array<Component, 6>& comps) {
    if (p < 0 || p >= geom.n_plaquettes()) throw std::out_of_range("plaquette index out of range");
    std::array<std::pair<int, Component>, 6> ops;
    for (int k = 0; k < 6; ++k) ops[k] = {geom.plaquettes[p].sites[k], comps[k]};
    return kernels::make_pauli_string(ops);
}

}  // namespace

double CouplingParams::coupling(Component c) const {
    switch (c) {
    case Component::x: return Jx;
    case Component::y: return Jy;
    case Component::z: return Jz;
    }
    return 0.0;
}

void CouplingParams::validate() const {
    for (double v : {Jx, Jy, Jz, D, omega})
        if (!std::isfinite(v)) throw std::invalid_argument("CouplingParams: non-finite value");
    if (D < 0) throw std::invalid_argument("CouplingParams: drive amplitude D must be >= 0");
}

const char* to_string(Engine e) { return e == Engine::hilbert ? "hilbert" : "label"; }

Engine engine_from_string(const std::string& s) {
    if (s == "hilbert") return Engine::hilbert;
    if (s == "label") return Engine::label;
    throw std::invalid_argument("unknown engine '" + s + "' (expected hilbert or label)");
}

std::vector<kernels::PauliString> h0_terms(const LatticeGeometry& geom, const CouplingParams& params,
                                           HamiltonianPart part) {
    std::vector<Component> labels;
    if (part == HamiltonianPart::secular) labels = site_components(geom);
    std::vector<kernels::PauliString> terms;
    terms.reserve(geom.bonds.size());
    for (const auto& b : geom.bonds) {
        const double j = params.coupling(b.component);
        if (j == 0.0) continue;
        if (part == HamiltonianPart::secular && (labels[b.i] != b.component || labels[b.j] != b.component)) continue;
        const std::array<std::pair<int, Component>, 2> ops{{{b.i, b.component}, {b.j, b.component}}};
        terms.push_back(kernels::make_pauli_string(ops, j));
    }
    return terms;
}

StateVector apply_h0(const LatticeGeometry& geom, const CouplingParams& params, const StateVector& ket) {
    check_dim(geom, ket, "apply_h0");
    const auto terms = h0_terms(geom, params);
    StateVector out(ket.size());
    kernels::omp::apply_sum(terms, kernels::view(ket), kernels::view(out));
    return out;
}

Eigen::MatrixXcd dense_operator(std::span<const kernels::PauliString> terms, int n_sites, int hilbert_cap) {
    check_cap(n_sites, hilbert_cap, "dense_operator");
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    Eigen::MatrixXcd m(dim, dim);
    StateVector e = StateVector::Zero(dim);
    StateVector col(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        e[c] = 1.0;
        kernels::omp::apply_sum(terms, kernels::view(e), kernels::view(col));
        m.col(c) = col;
        e[c] = 0.0;
    }
    return m;
}

Eigen::MatrixXcd dense_h0(const LatticeGeometry& geom, const CouplingParams& params, int hilbert_cap) {
    const auto terms = h0_terms(geom, params);
    return dense_operator(terms, geom.n_sites(), hilbert_cap);
}

kernels::PauliString plaquette_string(const LatticeGeometry& geom, int p) { return string_on(geom, p, kPositionLabels); }

kernels::PauliString drive_string(const LatticeGeometry& geom, int i) { return string_on(geom, i, kDriveComponents); }

Eigen::MatrixXcd dense_plaquette(const LatticeGeometry& geom, int p, int hilbert_cap) {
    const auto w = plaquette_string(geom, p);
    return dense_operator(std::span<const kernels::PauliString>(&w, 1), geom.n_sites(), hilbert_cap);
}

StateVector apply_plaquette_projector(const LatticeGeometry& geom, int p, const StateVector& ket) {
    check_dim(geom, ket, "apply_plaquette_projector");
    StateVector w_ket(ket.size());
    kernels::omp::apply_string(plaquette_string(geom, p), kernels::view(ket), kernels::view(w_ket));
    return 0.5 * (ket + w_ket);
}

double plaquette_expectation(const LatticeGeometry& geom, int p, const StateVector& ket) {
    check_dim(geom, ket, "plaquette_expectation");
    if (std::abs(ket.norm() - 1.0) > 1e-9) throw std::invalid_argument("plaquette_expectation: ket is not normalized");
    return kernels::omp::expectation(plaquette_string(geom, p), kernels::view(ket)).real();
}

double state_energy(const LatticeGeometry& geom, const CouplingParams& params, const StateLabel& state,
                    Engine engine, int hilbert_cap) {
    if (engine == Engine::hilbert) {
        check_cap(geom.n_sites(), hilbert_cap, "state_energy");
        const StateVector ket = build_product_ket(geom, state, hilbert_cap);
        const StateVector h = apply_h0(geom, params, ket);
        return kernels::omp::inner(kernels::view(ket), kernels::view(h)).real();
    }
    // product-ket bond expectation <s^a_i><s^a_j> vanishes unless both labels are a
    const auto labels = site_components(geom);
    const auto signs = flip_signature(geom, state);
    double e = 0.0;
    for (const auto& b : geom.bonds)
        if (labels[b.i] == b.component && labels[b.j] == b.component)
            e += params.coupling(b.component) * signs.signs[b.i] * signs.signs[b.j];
    return e;
}

cplx transition_overlap(const LatticeGeometry& geom, const StateLabel& ground, const ExcitedLabel& target,
                        Engine engine, int hilbert_cap) {
    if (ground.config.size() != geom.n_plaquettes() || target.base.size() != geom.n_plaquettes())
        throw std::invalid_argument("transition_overlap: config length mismatch");
    const int i = target.flipped_plaquette;
    if (engine == Engine::hilbert) {
        check_cap(geom.n_sites(), hilbert_cap, "transition_overlap");
        const StateVector g = build_product_ket(geom, ground, hilbert_cap);
        const StateVector t = build_product_ket(geom, StateLabel(target), hilbert_cap);
        StateVector sg(g.size());
        kernels::omp::apply_string(drive_string(geom, i), kernels::view(g), kernels::view(sg));
        return kernels::omp::inner(kernels::view(t), kernels::view(sg));
    }
    const auto labels = site_components(geom);
    const auto sg = flip_signature(geom, ground);
    const auto st = flip_signature(geom, StateLabel(target));
    std::vector<int> op_at(geom.n_sites(), -1);
    for (int k = 0; k < 6; ++k) op_at[geom.plaquettes[i].sites[k]] = k;
    cplx amp{1.0, 0.0};
    for (int s = 0; s < geom.n_sites(); ++s) {
        if (op_at[s] < 0) {
            if (sg.signs[s] != st.signs[s]) return 0.0;
            continue;
        }
        amp *= single_site_element(labels[s], st.signs[s], kDriveComponents[op_at[s]], sg.signs[s]);
        if (std::abs(amp) < 1e-14) return 0.0;
    }
    // entries are 0 or unit modulus; snap rounding dust
    return {std::round(amp.real()), std::round(amp.imag())};
}

cplx perturbation_element(const LatticeGeometry& geom, const FlipConfig& ground, const ExcitedLabel& target,
                          const CouplingParams& params, Engine engine, int hilbert_cap) {
    params.validate();
    if (params.D == 0.0) return 0.0;
    return params.D * transition_overlap(geom, StateLabel(ground), target, engine, hilbert_cap);
}

EnergyTable EnergyTable::build(const LatticeGeometry& geom, const CouplingParams& params, int drive_plaquette,
                               Engine engine, int hilbert_cap) {
    const int n = geom.n_plaquettes();
    if (n > 24) throw std::invalid_argument("EnergyTable: at most 24 plaquettes");
    if (drive_plaquette < 0 || drive_plaquette >= n) throw std::out_of_range("EnergyTable: drive plaquette out of range");
    EnergyTable table;
    table.engine_ = engine;
    const std::int64_t count = std::int64_t{1} << n;
    table.rows_.resize(2 * count);
    for (std::int64_t b = 0; b < count; ++b) {
        const FlipConfig c(n, static_cast<std::uint64_t>(b));
        table.rows_[2 * b].state = StateLabel(c);
        table.rows_[2 * b + 1].state = StateLabel(excite(c, drive_plaquette));
    }
    const auto nrows = static_cast<std::int64_t>(table.rows_.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < nrows; ++r)
        table.rows_[r].energy = state_energy(geom, params, table.rows_[r].state, engine, hilbert_cap);
    for (std::size_t r = 0; r < table.rows_.size(); ++r) table.index_.emplace(table.rows_[r].state, r);
    return table;
}

double EnergyTable::at(const StateLabel& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::out_of_range("EnergyTable: no entry for " + s.id());
    return rows_[it->second].energy;
}

}  // namespace kitaev
