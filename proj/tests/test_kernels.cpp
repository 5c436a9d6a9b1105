#include <doctest.h>

#include <random>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/kernels.hpp"

using namespace kitaev;

namespace {

StateVector random_ket(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector v(Eigen::Index{1} << n);
    for (auto& x : v) x = cplx{g(rng), g(rng)};
    return v.normalized();
}

}  // namespace

TEST_SUITE("kernels") {

// 12 sites keeps both sizes above and below the parallel threshold in play
TEST_CASE("omp kernels match the serial reference") {
    for (int nx : {2, 3}) {
        const auto g = build_lattice(nx, 2);
        const int n = g.n_sites();
        const auto terms = h0_terms(g, CouplingParams{0.3, 1.2, -0.8});
        const auto psi = random_ket(n, 11 + nx);
        StateVector a(psi.size()), b(psi.size());
        kernels::serial::apply_sum(terms, kernels::view(psi), kernels::view(a));
        kernels::omp::apply_sum(terms, kernels::view(psi), kernels::view(b));
        CHECK((a - b).norm() < 1e-12);

        const auto wp = plaquette_string(g, 1);
        CHECK(std::abs(kernels::serial::expectation(wp, kernels::view(psi)) -
                       kernels::omp::expectation(wp, kernels::view(psi))) < 1e-12);
        kernels::serial::apply_string(wp, kernels::view(psi), kernels::view(a));
        kernels::omp::apply_string(wp, kernels::view(psi), kernels::view(b));
        CHECK((a - b).norm() < 1e-12);
        CHECK(std::abs(kernels::serial::inner(kernels::view(psi), kernels::view(a)) -
                       kernels::omp::inner(kernels::view(psi), kernels::view(a))) < 1e-12);

        const std::uint64_t keep = 0b101101;
        const Eigen::MatrixXcd ra = kernels::serial::reduced_density(kernels::view(psi), n, keep);
        const Eigen::MatrixXcd rb = kernels::omp::reduced_density(kernels::view(psi), n, keep);
        CHECK((ra - rb).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ra.trace().real() == doctest::Approx(1.0));
    }
}

TEST_CASE("product state") {
    const std::vector<std::array<cplx, 2>> f{{cplx{0.6}, cplx{0.8}}, {cplx{0.0}, cplx{1.0}}};
    StateVector a(4), b(4);
    kernels::serial::product_state(f, kernels::view(a));
    kernels::omp::product_state(f, kernels::view(b));
    // site 0 is the least significant bit
    CHECK(std::abs(a[2] - cplx{0.6}) < 1e-15);
    CHECK(std::abs(a[3] - cplx{0.8}) < 1e-15);
    CHECK(std::abs(a[0]) < 1e-15);
    CHECK((a - b).norm() < 1e-15);
}

TEST_CASE("Pauli strings reproduce the matrices") {
    for (auto c : kAllComponents) {
        const std::array<std::pair<int, Component>, 1> op{{{0, c}}};
        const auto s = kernels::make_pauli_string(op);
        const Eigen::MatrixXcd m = dense_operator(std::span(&s, 1), 1);
        CHECK((m - pauli_matrix(c)).cwiseAbs().maxCoeff() < 1e-15);
    }
    const std::array<std::pair<int, Component>, 2> xy{{{0, Component::x}, {1, Component::y}}};
    const auto s = kernels::make_pauli_string(xy, 2.0);
    const Eigen::MatrixXcd m = dense_operator(std::span(&s, 1), 2);
    // site 1 is the high bit
    const Eigen::Matrix2cd y = pauli_matrix(Component::y), x = pauli_matrix(Component::x);
    Eigen::MatrixXcd expect(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) expect(r, c) = 2.0 * y(r >> 1, c >> 1) * x(r & 1, c & 1);
    CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("reduced density of a product is pure") {
    const std::vector<std::array<cplx, 2>> f{{cplx{1.0}, cplx{0.0}}, {cplx{0.0}, cplx{1.0}}, {cplx{0.6}, cplx{0.8}}};
    StateVector v(8);
    kernels::serial::product_state(f, kernels::view(v));
    const Eigen::MatrixXcd r = kernels::omp::reduced_density(kernels::view(v), 3, 0b100);
    CHECK(std::abs(r(0, 0) - 0.36) < 1e-15);
    CHECK(std::abs(r(0, 1) - 0.48) < 1e-15);
    CHECK(std::abs((r * r).trace() - cplx{1.0}) < 1e-14);
}

TEST_CASE("deposit bits") {
    CHECK(kernels::deposit_bits(0b11, 0b1010) == 0b1010);
    CHECK(kernels::deposit_bits(0b10, 0b1010) == 0b1000);
    CHECK(kernels::deposit_bits(0b101, 0b110100) == 0b100100);
}

}
