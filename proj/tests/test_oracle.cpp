#include <doctest.h>

#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "kitaev/oracle.hpp"

using namespace kitaev;

namespace {

StateVector random_ket(Eigen::Index dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector v(dim);
    for (auto& x : v) x = cplx{g(rng), g(rng)};
    return v.normalized();
}

// exp(-i H t) psi for Hermitian H by full diagonalization
StateVector dense_propagate(const Eigen::MatrixXcd& h, const StateVector& psi, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd phases = (es.eigenvalues().cast<cplx>() * cplx{0.0, -t}).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("undriven evolution matches diagonalization") {
    const auto g = build_lattice(2, 2);
    CouplingParams p{1.0, 0.8, 1.2};
    const auto psi0 = random_ket(256, 3);
    OracleOptions o;
    o.tol = 1e-12;
    const auto res = exact_evolve(g, p, DriveSpec::exponential(0.0, 0.0), psi0, {0.0, 0.7, 2.0}, o);
    const Eigen::MatrixXcd h = dense_h0(g, p);
    CHECK((res.kets[0] - psi0).norm() == 0.0);
    for (std::size_t k = 1; k < res.times.size(); ++k)
        CHECK((res.kets[k] - dense_propagate(h, psi0, res.times[k])).norm() < 1e-9);
    CHECK(res.energy_drift < 1e-9);
    CHECK(res.norm_drift < 1e-9);
}

TEST_CASE("constant drive matches diagonalization of H0 + D S") {
    const auto g = build_lattice(2, 2);
    CouplingParams p;
    const double D = 0.3;
    const auto s = drive_string(g, 0);
    const Eigen::MatrixXcd h = dense_h0(g, p) + D * dense_operator(std::span(&s, 1), g.n_sites());
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const auto psi0 = build_product_ket(g, StateLabel(FlipConfig(4)));
    OracleOptions o;
    o.tol = 1e-12;
    const auto res = exact_evolve(g, p, DriveSpec::constant(D), psi0, {0.0, 1.5}, o);
    CHECK((res.kets[1] - dense_propagate(h, psi0, 1.5)).norm() < 1e-9);
}

TEST_CASE("fixed-step DOPRI5 converges at fifth order") {
    const auto g = build_lattice(2, 2);
    const auto psi0 = build_product_ket(g, StateLabel(FlipConfig(4)));
    const auto c = convergence_order(g, CouplingParams{}, DriveSpec::cosine(0.1, 1.0), psi0, 2.0, 0.1);
    CHECK(c.ratio > 15.0);
    CHECK(c.order > 4.0);
}

TEST_CASE("output times are hit exactly") {
    const auto g = build_lattice(2, 2);
    const auto psi0 = build_product_ket(g, StateLabel(FlipConfig(4)));
    const std::vector<double> times{0.0, 0.123, 0.123, 1.0};
    const auto res = exact_evolve(g, CouplingParams{}, DriveSpec::cosine(0.05, 1.0), psi0, times);
    CHECK(res.times == times);
    CHECK(res.kets.size() == 4);
    CHECK((res.kets[1] - res.kets[2]).norm() == 0.0);
    CHECK(res.steps > 0);
}

TEST_CASE("input guards") {
    const auto g = build_lattice(2, 2);
    StateVector bad = StateVector::Ones(256);
    CHECK_THROWS(exact_evolve(g, CouplingParams{}, DriveSpec::constant(0.0), bad, {0.0}));
    CHECK_THROWS(exact_evolve(g, CouplingParams{}, DriveSpec::constant(0.0), random_ket(256, 1), {1.0, 0.5}));
    OracleOptions o;
    o.hilbert_cap = 4;
    CHECK_THROWS_AS(exact_evolve(g, CouplingParams{}, DriveSpec::constant(0.0), random_ket(256, 1), {1.0}, o),
                    std::length_error);
}

TEST_CASE("projection of the first-order prediction") {
    const auto g = build_lattice(2, 2);
    CouplingParams p;
    const auto init = FlipConfig(4);
    const auto times = uniform_grid(2.0, 9);
    const auto series =
        evolve_coefficients(g, p, DriveSpec::exponential(0.01, 1.0), init, connected_targets(g, init, 0), times);
    const auto basis = make_active_basis(g, init, series);
    CHECK(basis.ids.size() == 2);
    CHECK(orthonormality_error(basis.kets) < 1e-14);
    const auto pred = tdpt_prediction(series, times.size());
    CHECK(pred[0][4] == cplx{1.0, 0.0});
    OracleOptions o;
    o.part = HamiltonianPart::secular;
    o.tol = 1e-12;
    const auto res = exact_evolve(g, p, DriveSpec::exponential(0.01, 1.0), basis.kets[0], times, o);
    const auto rep = project_and_compare(res, basis, pred);
    // second-order remainder ~ D^2 t^2
    CHECK(rep.max_error < 1e-3);
    CHECK(rep.max_target_error <= rep.max_error);
    CHECK(rep.rows.size() == 2);
}

TEST_CASE("orthonormality error") {
    std::vector<StateVector> kets{StateVector::Unit(3, 0), StateVector::Unit(3, 1)};
    CHECK(orthonormality_error(kets) == 0.0);
    kets.push_back(StateVector::Unit(3, 0));
    CHECK(orthonormality_error(kets) == doctest::Approx(1.0));
}

TEST_CASE("error report json") {
    ScalingStudy s;
    s.points.push_back({0.02, {}});
    s.points.back().report.rows.push_back({"g:0x0", {}, {}, 0.1});
    const auto j = error_report_json(s);
    CHECK(j.contains("targets"));
}

}
