#include <doctest.h>

#include <numbers>

#include "kitaev/phase.hpp"

using namespace kitaev;
using std::numbers::pi;

TEST_SUITE("phase") {

TEST_CASE("unwrap takes the minimal jump") {
    const auto u = unwrap_phase({3.0, -3.0});
    CHECK(u[1] == doctest::Approx(3.283185307).epsilon(1e-9));
    const auto v = unwrap_phase({0.1, -3.0, 3.0}, {0, 1, 0});
    CHECK(v[0] == 0.1);
    CHECK(std::isnan(v[1]));
    CHECK(v[2] == 3.0);  // chain restarts on the principal branch
}

TEST_CASE("decompose splits amplitude and phase") {
    const std::vector<double> t{0.0, 1.0, 2.0};
    const std::vector<cplx> c{0.0, std::polar(2.0, 0.5), std::polar(0.5, -2.5)};
    const auto s = decompose(t, c);
    CHECK(s.singular[0] == 1);
    CHECK(std::isinf(s.a[0]));
    CHECK(s.A[1] == doctest::Approx(2.0));
    CHECK(s.a[1] == doctest::Approx(std::log(2.0)));
    CHECK(s.phi[1] == doctest::Approx(0.5));
    CHECK(s.phi[2] == doctest::Approx(-2.5));
    CHECK(s.singular_count() == 1);
    CHECK(decompose(t, std::vector<cplx>(3, 0.0)).all_singular());
}

TEST_CASE("linear phase is continued past pi") {
    std::vector<double> t;
    std::vector<cplx> c;
    for (int k = 0; k <= 40; ++k) {
        t.push_back(0.25 * k);
        c.push_back(std::exp(cplx{0.0, 0.5 * t.back()}));
    }
    const auto s = decompose(t, c);
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(s.phi[k] == doctest::Approx(0.5 * t[k]).epsilon(1e-12));
}

TEST_CASE("effective levels and shifted transition") {
    std::vector<double> t{0.0, 1.0, 2.0};
    const auto flat = constant_phase(t);
    const auto a = effective_level(5.0, flat);
    REQUIRE(a.size() == 2);
    CHECK(a[0].second == doctest::Approx(5.0));
    std::vector<cplx> c;
    for (double x : t) c.push_back(std::exp(cplx{0.0, 0.5 * x}));
    const auto b = effective_level(6.0, decompose(t, c));
    CHECK(b[1].second == doctest::Approx(5.5));
    const auto shift = shifted_transition(6.0, decompose(t, c), 5.0, flat);
    REQUIRE(shift.size() == 2);
    CHECK(shift[0].second == doctest::Approx(0.5));
}

TEST_CASE("stability intervals follow the sign of da/dt") {
    // |c| = sin(t/2)^2-like bump: grows on (0, pi), decays on (pi, 2 pi)
    std::vector<double> t;
    std::vector<cplx> c;
    for (int k = 1; k < 200; ++k) {
        t.push_back(2 * pi * k / 200.0);
        c.push_back(cplx{1.0 - std::cos(t.back()), 0.0});
    }
    const auto iv = stability_intervals(decompose(t, c));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].label == Stability::growing);
    CHECK(iv[1].label == Stability::decaying);
    CHECK(iv[0].t_end < pi);
    CHECK(iv[1].t_start > pi);
    CHECK(iv[1].t_start - iv[0].t_end < 2 * (t[1] - t[0]) + 1e-12);
    CHECK(std::string(to_string(Stability::decaying)) == "DECAYING");
}

TEST_CASE("first-order phase law on the closed form") {
    // c = -2i sin(x/2) e^{ix/2} D/delta, so phi = x/2 - pi/2 while sin(x/2) > 0
    const double delta = 1.3, D = 0.01;
    std::vector<double> t;
    std::vector<cplx> c;
    for (int k = 1; k < 50; ++k) {
        t.push_back(0.04 * k);
        c.push_back(coefficient_closed_form(1.0, D, delta, t.back()));
    }
    const auto s = decompose(t, c);
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(s.phi[k] == doctest::Approx(delta * t[k] / 2 - pi / 2).epsilon(1e-12));
}

TEST_CASE("too few samples") {
    CHECK_THROWS(stability_intervals(decompose({0.0, 1.0}, {cplx{1.0}, cplx{2.0}})));
}

}
