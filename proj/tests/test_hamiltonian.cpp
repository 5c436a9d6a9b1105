#include <doctest.h>

#include "kitaev/hamiltonian.hpp"

using namespace kitaev;

TEST_SUITE("hamiltonian") {

TEST_CASE("plaquettes commute with H0 and with each other") {
    const auto g = build_lattice(2, 2);
    CouplingParams p{1.0, 0.7, 1.3};
    const Eigen::MatrixXcd h = dense_h0(g, p);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    for (int a = 0; a < g.n_plaquettes(); ++a) {
        const Eigen::MatrixXcd wa = dense_plaquette(g, a);
        CHECK((wa * h - h * wa).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((wa * wa - Eigen::MatrixXcd::Identity(wa.rows(), wa.cols())).cwiseAbs().maxCoeff() < 1e-12);
        for (int b = a + 1; b < g.n_plaquettes(); ++b) {
            const Eigen::MatrixXcd wb = dense_plaquette(g, b);
            CHECK((wa * wb - wb * wa).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("projector is idempotent") {
    const auto g = build_lattice(2, 2);
    StateVector psi = StateVector::Random(1 << 8);
    psi.normalize();
    const auto once = apply_plaquette_projector(g, 1, psi);
    const auto twice = apply_plaquette_projector(g, 1, once);
    CHECK((once - twice).norm() < 1e-12);
}

TEST_CASE("label energies agree with Hilbert expectation values") {
    const auto g = build_lattice(2, 2);
    CouplingParams p{0.9, 1.1, 1.4};
    for (std::uint64_t b = 0; b < 16; ++b) {
        const FlipConfig c(4, b);
        CHECK(state_energy(g, p, StateLabel(c), Engine::label) ==
              doctest::Approx(state_energy(g, p, StateLabel(c), Engine::hilbert)).epsilon(1e-12));
        for (int i = 0; i < 4; ++i) {
            const StateLabel e(excite(c, i));
            CHECK(state_energy(g, p, e, Engine::label) ==
                  doctest::Approx(state_energy(g, p, e, Engine::hilbert)).epsilon(1e-12));
        }
    }
    CHECK(state_energy(g, CouplingParams{}, StateLabel(FlipConfig(4)), Engine::hilbert) == doctest::Approx(2.0));
}

TEST_CASE("label transition overlaps agree with Hilbert overlaps") {
    const auto g = build_lattice(2, 2);
    for (std::uint64_t gb : {0ull, 5ull, 9ull})
        for (std::uint64_t tb = 0; tb < 16; ++tb)
            for (int i = 0; i < 4; ++i) {
                const auto t = excite(FlipConfig(4, tb), i);
                const cplx a = transition_overlap(g, StateLabel(FlipConfig(4, gb)), t, Engine::label);
                const cplx b = transition_overlap(g, StateLabel(FlipConfig(4, gb)), t, Engine::hilbert);
                CHECK(std::abs(a - b) < 1e-12);
            }
}

TEST_CASE("secular part is diagonal in the labeled basis") {
    const auto g = build_lattice(2, 2);
    const auto terms = h0_terms(g, CouplingParams{}, HamiltonianPart::secular);
    CHECK(terms.size() < h0_terms(g, CouplingParams{}).size());
    const Eigen::MatrixXcd hs = dense_operator(terms, g.n_sites());
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) {
            const auto ka = build_product_ket(g, StateLabel(FlipConfig(4, a)));
            const auto kb = build_product_ket(g, StateLabel(FlipConfig(4, b)));
            const cplx m = ka.dot(hs * kb);
            if (label_overlap(g, StateLabel(FlipConfig(4, a)), StateLabel(FlipConfig(4, b))) == 0.0)
                CHECK(std::abs(m) < 1e-12);
            else
                CHECK(m.real() == doctest::Approx(state_energy(g, CouplingParams{}, StateLabel(FlipConfig(4, a)),
                                                                Engine::label)));
        }
}

TEST_CASE("perturbation element carries D") {
    const auto g = build_lattice(2, 2);
    CouplingParams p;
    p.D = 0.25;
    const auto t = excite(FlipConfig(4), 0);
    const cplx m = perturbation_element(g, FlipConfig(4), t, p, Engine::label);
    CHECK(std::abs(m) == doctest::Approx(0.25));
    p.D = -1;
    CHECK_THROWS(perturbation_element(g, FlipConfig(4), t, p, Engine::label));
}

TEST_CASE("energy table") {
    const auto g = build_lattice(2, 2);
    const auto table = EnergyTable::build(g, CouplingParams{}, 0, Engine::label);
    CHECK(table.rows().size() == 32);
    CHECK(table.at(StateLabel(FlipConfig(4))) == doctest::Approx(2.0));
    CHECK(table.contains(StateLabel(excite(FlipConfig(4, 3), 0))));
    CHECK_FALSE(table.contains(StateLabel(excite(FlipConfig(4, 3), 1))));
    CHECK_THROWS(EnergyTable::build(g, CouplingParams{}, 4, Engine::label));
}

TEST_CASE("engine names") {
    CHECK(engine_from_string("hilbert") == Engine::hilbert);
    CHECK(std::string(to_string(Engine::label)) == "label");
    CHECK_THROWS(engine_from_string("dense"));
}

TEST_CASE("normalization guard") {
    const auto g = build_lattice(2, 2);
    StateVector psi = StateVector::Ones(256);
    CHECK_THROWS(plaquette_expectation(g, 0, psi));
}

}
