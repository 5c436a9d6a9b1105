#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "kitaev/correlation.hpp"

using namespace kitaev;

TEST_SUITE("correlation") {

TEST_CASE("formula on synthetic series") {
    const std::vector<double> t{0.0, 1.0, 2.0};
    const auto ph = decompose(t, {cplx{0.0}, std::polar(0.2, 0.3), std::polar(0.5, 1.1)});
    const auto r = correlation_formula(std::vector<double>{2.0}, std::vector<SubGeometricPhaseSeries>{ph}, 2.0, 1.0);
    REQUIRE(r.terms.size() == 1);
    const cplx expect = 0.5 * 0.2 * std::exp(cplx{0.0, -(1.1 - 0.3 - 4.0)});
    CHECK(std::abs(r.value - expect) < 1e-15);
    CHECK_FALSE(r.all_terms_zero);
    // t0 = 0 lands on the singular sample where c(0) = 0
    CHECK(correlation_formula(std::vector<double>{2.0}, std::vector<SubGeometricPhaseSeries>{ph}, 2.0, 0.0)
              .all_terms_zero);
    CHECK(default_reference_time(t) == 1.0);
    CHECK_THROWS(correlation_formula(std::vector<double>{}, std::vector<SubGeometricPhaseSeries>{ph}, 1.0, 1.0));
}

TEST_CASE("pairs") {
    const auto g = build_lattice(2, 2);
    CHECK(nearest_neighbor_pairs(g).size() == 12);
    CHECK(all_component_pairs().size() == 9);
}

TEST_CASE("selection rule classification") {
    const auto g = build_lattice(2, 2);
    const auto& b = g.bonds[0];
    CorrelationRecord allowed{b.i, b.j, b.component, b.component, 1.0, 0.0, cplx{0.5}, CorrelationEngine::exact};
    CorrelationRecord same_site{3, 3, Component::x, Component::x, 1.0, 0.0, cplx{1.0}, CorrelationEngine::exact};
    auto forbidden = allowed;
    forbidden.beta = third_component(b.component, Component::x == b.component ? Component::y : Component::x);
    forbidden.alpha = forbidden.beta;
    const auto d = selection_rule(g, {allowed, same_site, forbidden}, 1e-8);
    CHECK(d.checked == 1);  // only records outside the rule are checked
    CHECK(d.violations == 1);
    CHECK(d.max_forbidden == doctest::Approx(0.5));
    CHECK_FALSE(d.holds());
}

TEST_CASE("exact scan against dense propagation") {
    const auto g = build_lattice(2, 2);
    CouplingParams p;
    const double t = 0.8;
    const auto init = FlipConfig(4, 0b0010);
    const auto& b = g.bonds[5];
    const std::vector<std::pair<int, int>> pairs{{b.i, b.j}, {b.i, b.i}};
    const std::vector<std::pair<Component, Component>> comps{{b.component, b.component}, {Component::x, Component::z}};
    OracleOptions o;
    o.tol = 1e-12;
    const auto scan = correlation_exact_scan(g, p, DriveSpec::exponential(0.0, 0.0), init, pairs, comps, t, 1e-8, o);
    REQUIRE(scan.records.size() == 4);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_h0(g, p));
    const Eigen::VectorXcd ph = (es.eigenvalues().cast<cplx>() * cplx{0.0, -t}).array().exp();
    const Eigen::MatrixXcd U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const StateVector psi = U * build_product_ket(g, StateLabel(init));
    auto sigma = [&](int site, Component c) {
        const std::array<std::pair<int, Component>, 1> op{{{site, c}}};
        const auto s = kernels::make_pauli_string(op);
        return dense_operator(std::span(&s, 1), g.n_sites());
    };
    for (const auto& r : scan.records) {
        const cplx expect = psi.dot(U.adjoint() * sigma(r.site_i, r.alpha) * U * sigma(r.site_j, r.beta) * psi);
        CHECK(std::abs(r.value - expect) < 1e-8);
    }
}

}
