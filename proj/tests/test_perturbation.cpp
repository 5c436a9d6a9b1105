#include <doctest.h>

#include <numbers>

#include "kitaev/perturbation.hpp"

using namespace kitaev;
using std::numbers::pi;

TEST_SUITE("perturbation") {

TEST_CASE("closed form at hand-computed points") {
    CHECK(std::abs(coefficient_closed_form(1.0, 1.0, 1.0, pi) - cplx{2.0, 0.0}) < 1e-15);
    CHECK(std::abs(coefficient_closed_form(1.0, 1.0, 1.0, pi / 2) - cplx{1.0, -1.0}) < 1e-15);
    CHECK(std::abs(coefficient_closed_form(1.0, 1.0, 0.0, 1.0) - cplx{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(coefficient_closed_form(cplx{0.0, 1.0}, 0.5, 2.0, pi / 2) - cplx{0.0, 0.5}) < 1e-15);
    CHECK_THROWS(coefficient_closed_form(1.0, 1.0, 1.0, -0.1));
}

TEST_CASE("resonance branch is continuous across the threshold") {
    const double t = 2.0;
    for (double x : {0.99e-4, 1.01e-4}) {
        const double delta = x / t;
        const cplx direct = 0.3 * (1.0 - std::exp(cplx{0.0, x})) / delta;
        CHECK(std::abs(coefficient_closed_form(1.0, 0.3, delta, t) - direct) < 1e-11);
    }
}

TEST_CASE("adaptive integral of known functions") {
    CHECK(std::abs(integrate_adaptive([](double x) { return cplx{std::sin(x), 0.0}; }, 0.0, pi, 1e-13) - 2.0) < 1e-12);
    CHECK(std::abs(integrate_adaptive([](double x) { return std::exp(cplx{0.0, x}); }, 0.0, pi, 1e-13) -
                   cplx{0.0, 2.0}) < 1e-12);
    // kink at 0.3 handled by a breakpoint
    const auto kink = [](double x) { return cplx{std::abs(x - 0.3), 0.0}; };
    CHECK(std::abs(integrate_adaptive(kink, 0.0, 1.0, 1e-13, {0.3}) - 0.29) < 1e-13);
}

TEST_CASE("quadrature agrees with the closed form for exponential drives") {
    const auto drive = DriveSpec::exponential(0.02, 0.7);
    const cplx overlap{0.0, -1.0};
    for (double dE : {-1.0, 0.7, 2.5})
        for (double t : {0.5, 3.0, 11.0}) {
            const cplx q = coefficient_quadrature(drive.D * overlap, drive, dE, t, 1e-13);
            const cplx c = coefficient_closed_form(overlap, drive.D, dE - drive.omega, t);
            CHECK(std::abs(q - c) < 1e-12);
        }
}

TEST_CASE("drive profiles") {
    CHECK(std::abs(DriveSpec::exponential(2.0, 1.0)(pi) - cplx{-2.0, 0.0}) < 1e-15);
    CHECK(std::abs(DriveSpec::cosine(1.5, 2.0)(pi / 2) - cplx{-1.5, 0.0}) < 1e-15);
    CHECK(std::abs(DriveSpec::constant(0.4)(7.0) - cplx{0.4, 0.0}) < 1e-15);
    const auto s = DriveSpec::sampled({0.0, 1.0, 3.0}, {cplx{0.0}, cplx{1.0}, cplx{0.0, 1.0}}, 1.0);
    CHECK(std::abs(s(0.5) - cplx{0.5}) < 1e-15);
    CHECK(std::abs(s(2.0) - cplx{0.5, 0.5}) < 1e-15);
    CHECK_THROWS(DriveSpec::sampled({0.0, 0.0}, {cplx{0.0}, cplx{1.0}}, 1.0));
}

TEST_CASE("grid") {
    const auto g = uniform_grid(2.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 2.0);
    CHECK(g[1] == doctest::Approx(0.5));
}

TEST_CASE("connected targets on small tori") {
    for (auto [nx, ny] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
        const auto geom = build_lattice(nx, ny);
        const auto t = connected_targets(geom, FlipConfig(geom.n_plaquettes()), 0);
        REQUIRE(t.size() == 1);
        CHECK(StateLabel(t[0]).id() == "e:0x0:0");
    }
    const auto geom = build_lattice(2, 2);
    CHECK(connected_targets(geom, FlipConfig(4), 0, Engine::hilbert).size() == 1);
    CHECK(drive_targets(4, 1).size() == 16);
}

TEST_CASE("evolve coefficients on the 2x2 torus") {
    const auto geom = build_lattice(2, 2);
    CouplingParams p;
    const auto init = FlipConfig(4);
    const auto targets = connected_targets(geom, init, 0);
    const auto times = uniform_grid(6.0, 13);
    const auto series = evolve_coefficients(geom, p, DriveSpec::exponential(0.01, 0.5), init, targets, times);
    REQUIRE(series.size() == 1);
    const auto& s = series[0];
    CHECK(std::abs(s.element) == doctest::Approx(0.01));
    const double delta = s.E_target - s.E_initial - 0.5;
    for (std::size_t k = 0; k < times.size(); ++k)
        CHECK(std::abs(s.values[k] - coefficient_closed_form(s.element / 0.01, 0.01, delta, times[k])) < 1e-15);

    // quadrature path via a custom drive with the same profile
    auto custom = DriveSpec::exponential(0.01, 0.5);
    custom.kind = DriveSpec::Kind::custom;
    custom.custom = [](double t) { return 0.01 * std::exp(cplx{0.0, -0.5 * t}); };
    const auto viaq = evolve_coefficients(geom, p, custom, init, targets, times);
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(std::abs(viaq[0].values[k] - s.values[k]) < 1e-11);

    CHECK_THROWS(evolve_coefficients(geom, p, DriveSpec::exponential(0.01, 0.5), init, targets, {0.5, 1.0}));
}

TEST_CASE("weight-class aggregate normalization") {
    CoefficientSeries a, b;
    a.target = StateLabel(excite(FlipConfig(4, 1), 0));
    b.target = StateLabel(excite(FlipConfig(4, 2), 0));
    a.times = b.times = {0.0, 1.0};
    a.values = {0.0, cplx{1.0}};
    b.values = {0.0, cplx{3.0}};
    const auto agg = aggregate_weight_class({a, b}, 4, 1);
    CHECK(agg.values[1].real() == doctest::Approx(2.0));
}

}
