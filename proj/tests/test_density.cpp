#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "kitaev/density.hpp"

using namespace kitaev;

TEST_SUITE("density") {

TEST_CASE("assembled state is normalized with dynamical phases") {
    CoefficientSeries s;
    s.target = StateLabel(excite(FlipConfig(4), 0));
    s.E_initial = 2.0;
    s.E_target = 0.5;
    s.times = {0.0, 1.0, 2.0};
    s.values = {0.0, cplx{0.0, 0.3}, cplx{0.4, 0.0}};
    const auto st = assemble_state({s}, 2.0, FlipConfig(4));
    CHECK(st.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(st.norm_factor == doctest::Approx(1.0 / std::sqrt(1.16)));
    CHECK(std::arg(st.amplitudes[0]) == doctest::Approx(std::remainder(-4.0, 2 * std::numbers::pi)));
    CHECK(std::abs(st.amplitudes[1] - 0.4 * std::exp(cplx{0.0, -1.0}) * st.norm_factor) < 1e-15);
    CHECK_THROWS_AS(assemble_state({s}, 1.5, FlipConfig(4)), std::out_of_range);

    const auto rho = density_matrix(st);
    CHECK(rho.dim() == 2);
    CHECK(rho.trace == doctest::Approx(1.0));
    CHECK(rho.purity() == doctest::Approx(1.0));
    CHECK(rho.hermiticity_error() < 1e-16);
    CHECK(rho.min_eigenvalue() > -1e-15);
    CHECK(rho.basis[1] == "e:0x0:0");
}

TEST_CASE("density matrix rejects unnormalized amplitudes") {
    StateVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS(density_matrix({"a", "b"}, v));
}

TEST_CASE("entropies") {
    StateVector bell = StateVector::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    const auto r = reduced_entropy(bell, 2, 0b01);
    CHECK(r.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(r.reduced.dim() == 2);
    CHECK(von_neumann_entropy(Eigen::MatrixXcd::Identity(4, 4) / 4.0) == doctest::Approx(std::log(4.0)));
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(3, 3);
    pure(1, 1) = 1.0;
    CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0));
}

TEST_CASE("sublattice bipartition of a product ket") {
    const auto g = build_lattice(2, 2);
    const auto ket = build_product_ket(g, StateLabel(FlipConfig(4, 0b0110)));
    const auto a = reduced_entropy(g, ket, Sublattice::A);
    const auto b = reduced_entropy(g, ket, Sublattice::B);
    CHECK(std::abs(a.entropy) < 1e-12);
    CHECK(std::abs(b.entropy) < 1e-12);
    CHECK(std::popcount(sublattice_mask(g, Sublattice::A)) == 4);
    CHECK((sublattice_mask(g, Sublattice::A) & sublattice_mask(g, Sublattice::B)) == 0);
}

TEST_CASE("observable expectation") {
    StateVector v(2);
    v << 0.6, 0.8;
    const auto rho = density_matrix({"u", "d"}, v);
    const cplx x = observable_expectation(rho, pauli_matrix(Component::x));
    CHECK(x.real() == doctest::Approx(0.96));
    CHECK_THROWS(observable_expectation(rho, pauli_matrix(Component::x), {"d", "u"}));
}

TEST_CASE("thermal weights") {
    auto w = thermal_weights({0.0, 1.0}, 1.0);
    CHECK(w[0] == doctest::Approx(0.731058579));
    CHECK(w[1] == doctest::Approx(0.268941421));
    w = thermal_weights({0.0, 1.0}, 1.0, WeightFunction::fermi);
    CHECK(w[0] == doctest::Approx(0.5 / (0.5 + 1.0 / (std::exp(1.0) + 1.0))));
    w = thermal_weights({3.0, 1.0, 1.0, 2.0}, 0.0);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == doctest::Approx(0.5));
    w = thermal_weights({3.0, 1.0, 7.0}, std::numeric_limits<double>::infinity());
    for (double x : w) CHECK(x == doctest::Approx(1.0 / 3.0));
    // large energy gaps must not overflow
    w = thermal_weights({1e4, 1e4 + 1.0}, 1.0);
    CHECK(w[0] == doctest::Approx(0.731058579));
    CHECK_THROWS(thermal_weights({0.0}, -1.0));
    CHECK_THROWS(thermal_weights({0.0}, std::nan("")));
    CHECK(weight_function_from_string("fermi") == WeightFunction::fermi);
    CHECK_THROWS(weight_function_from_string("bose"));
}

TEST_CASE("thermal mixture of orthogonal states") {
    StateVector a(2), b(2);
    a << 1.0, 0.0;
    b << 0.0, 1.0;
    const auto ens = thermal_mix({{0.0, a}, {1.0, b}}, 1.0);
    CHECK(ens.rho.entries(0, 0).real() == doctest::Approx(0.731058579));
    CHECK(std::abs(ens.rho.entries(0, 1)) < 1e-16);
    CHECK(ens.rho.purity() < 1.0);
    CHECK(ens.rho.trace == doctest::Approx(1.0));
}

}
