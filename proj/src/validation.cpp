#include "kitaev/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kitaev/correlation.hpp"
#include "kitaev/density.hpp"
#include "kitaev/hamiltonian.hpp"
#include "kitaev/manifold.hpp"
#include "kitaev/oracle.hpp"
#include "kitaev/perturbation.hpp"
#include "kitaev/phase.hpp"

namespace kitaev {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string fix(double x, int digits = 6) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

SubCheck check(std::string name, bool ok, std::string detail, bool diagnostic = false) {
    return {std::move(name), ok, std::move(detail), diagnostic};
}

double wrap_angle(double x) { return std::remainder(x, 2.0 * kPi); }

// --- shared fixtures -------------------------------------------------------------

struct DrivenSeries {
    LatticeGeometry geom;
    CouplingParams params;
    FlipConfig initial;
    double omega0 = 0.0;
    double delta = 1.0;
    cplx overlap{0.0, 0.0};
    std::vector<double> times;
    std::vector<CoefficientSeries> coeffs;
};

// Exponential drive on plaquette 0 from the empty config, detuned by delta.
DrivenSeries driven_series(int nx, int ny, double D, double delta, double t_max, int samples) {
    DrivenSeries s;
    s.geom = build_lattice(nx, ny);
    s.initial = FlipConfig::empty(s.geom.n_plaquettes());
    const auto targets = connected_targets(s.geom, s.initial, 0);
    if (targets.size() != 1) throw std::runtime_error("expected exactly one connected target");
    s.omega0 = state_energy(s.geom, s.params, StateLabel(targets[0]), Engine::label) -
               state_energy(s.geom, s.params, StateLabel(s.initial), Engine::label);
    s.delta = delta;
    s.overlap = transition_overlap(s.geom, StateLabel(s.initial), targets[0], Engine::label);
    s.params.D = D;
    s.params.omega = s.omega0 - delta;
    s.times = uniform_grid(t_max, samples);
    s.coeffs = evolve_coefficients(s.geom, s.params, DriveSpec::exponential(D, s.params.omega), s.initial, targets,
                                   s.times);
    return s;
}

// --- criteria --------------------------------------------------------------------

CriterionResult criterion_manifold() {
    CriterionResult r{1, "manifold counting", {}};
    for (int n : {4, 9}) {
        std::vector<std::uint64_t> binom(n + 1, 0);
        binom[0] = 1;
        for (int row = 1; row <= n; ++row)
            for (int k = row; k >= 1; --k) binom[k] += binom[k - 1];
        bool ok = true;
        std::uint64_t total = 0;
        std::set<std::uint64_t> seen;
        std::string sizes;
        for (int k = 0; k <= n; ++k) {
            const auto cls = enumerate_weight_class(n, k);
            ok = ok && cls.size() == binom[k] && weight_class_size(n, k) == binom[k];
            for (const auto& c : cls) {
                ok = ok && c.weight() == k;
                seen.insert(c.bits());
            }
            total += cls.size();
            sizes += (k ? "," : "") + std::to_string(cls.size());
        }
        const std::uint64_t expected = std::uint64_t{1} << n;
        ok = ok && total == expected && seen.size() == expected;
        r.checks.push_back(check("N=" + std::to_string(n), ok,
                                 "class sizes " + sizes + ", total " + std::to_string(total) + ", distinct " +
                                     std::to_string(seen.size()) + " (2^N = " + std::to_string(expected) + ")"));
    }
    return r;
}

CriterionResult criterion_plaquette_algebra() {
    CriterionResult r{2, "plaquette algebra on the 2x2 torus", {}};
    const auto geom = build_lattice(2, 2);
    const CouplingParams p;
    const Eigen::MatrixXcd h = dense_h0(geom, p);
    double comm = 0.0;
    double spec = 0.0;
    for (int q = 0; q < geom.n_plaquettes(); ++q) {
        const Eigen::MatrixXcd w = dense_plaquette(geom, q);
        comm = std::max(comm, (w * h - h * w).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const double l = es.eigenvalues()[k];
            spec = std::max(spec, std::min(std::abs(l - 1.0), std::abs(l + 1.0)));
        }
    }
    r.checks.push_back(check("[w_p, H0] = 0", comm < 1e-12, "max entry " + sci(comm) + " (tol 1e-12)"));
    r.checks.push_back(check("spec(w_p) in {+1,-1}", spec < 1e-10, "max distance " + sci(spec) + " (tol 1e-10)"));

    std::vector<FlipConfig> configs{FlipConfig::empty(geom.n_plaquettes())};
    for (int q = 0; q < geom.n_plaquettes(); ++q) configs.push_back(configs.front().toggled(q));
    double worst = 0.0;
    std::string plus_values;
    for (const auto& c : configs) {
        const StateVector ket = build_product_ket(geom, c);
        for (int q = 0; q < geom.n_plaquettes(); ++q) {
            const double e = plaquette_expectation(geom, q, ket);
            worst = std::max(worst, std::abs(e - 1.0));
            if (c.weight() == 0) plus_values += (q ? ", " : "") + fix(e, 3);
        }
    }
    r.checks.push_back(check("<w_p> = +1 on all-plus and single-flip kets", worst < 1e-10,
                             "max |<w_p> - 1| = " + sci(worst) + " (tol 1e-10); all-plus <w_p> = (" + plus_values +
                                 ")"));
    return r;
}

CriterionResult criterion_closed_form() {
    CriterionResult r{3, "closed form vs adaptive quadrature", {}};
    const auto drive = DriveSpec::exponential(1.0, 0.0);
    double worst_rel = 0.0;
    int n = 0;
    auto compare_rel = [&](double delta, double t) {
        const cplx cf = coefficient_closed_form(1.0, 1.0, delta, t);
        const cplx cq = coefficient_quadrature(1.0, drive, delta, t, 1e-13);
        worst_rel = std::max(worst_rel, std::abs(cq - cf) / std::abs(cf));
        ++n;
    };
    for (int k = 0; k < 200; ++k) {
        const double x = 0.1 + 19.9 * k / 199.0;
        compare_rel(x, 1.0);       // vary delta at t = 1
        compare_rel(1.0, x);       // vary t at delta = 1
        compare_rel(-x / 2.5, 2.5);  // negative detuning
    }
    r.checks.push_back(check("delta*t in [0.1, 20]", worst_rel < 1e-8,
                             std::to_string(n) + " points, max relative error " + sci(worst_rel) + " (tol 1e-8)"));

    double worst_abs = 0.0;
    int m = 0;
    for (double x : {0.0, 1e-12, -1e-9, 1e-7, -3e-6, 2e-5, 5e-5, -9.9e-5, 9.9e-5})
        for (double t : {0.5, 1.0, 7.3, 20.0}) {
            const double delta = x / t;
            const cplx cf = coefficient_closed_form(1.0, 1.0, delta, t);
            const cplx cq = coefficient_quadrature(1.0, drive, delta, t, 1e-13);
            worst_abs = std::max(worst_abs, std::abs(cq - cf));
            ++m;
        }
    r.checks.push_back(check("resonance branch |delta*t| < 1e-4", worst_abs < 1e-10,
                             std::to_string(m) + " points, max absolute error " + sci(worst_abs) + " (tol 1e-10)"));
    return r;
}

CriterionResult criterion_tdpt_validity() {
    CriterionResult r{4, "first-order validity against exact evolution (2x2)", {}};
    const auto geom = build_lattice(2, 2);
    const CouplingParams p;
    const auto initial = FlipConfig::empty(geom.n_plaquettes());
    const auto targets = connected_targets(geom, initial, 0);
    const double omega0 = state_energy(geom, p, StateLabel(targets.at(0)), Engine::label) -
                          state_energy(geom, p, StateLabel(initial), Engine::label);
    const double omega = omega0 - 1.0;
    const auto times = uniform_grid(2.0 * kPi, 101);

    auto describe = [](const ScalingStudy& s) {
        std::ostringstream d;
        d << "max error " << sci(s.points[0].report.max_error) << " at D=0.02, " << sci(s.points[1].report.max_error)
          << " at D=0.01, ratio " << fix(s.ratios[0], 3) << " (target rows only: "
          << fix(s.points[0].report.max_target_error / s.points[1].report.max_target_error, 3) << ")";
        return d.str();
    };

    OracleOptions o;
    o.tol = 1e-11;
    o.part = HamiltonianPart::secular;
    const auto secular = tdpt_scaling(geom, p, omega, initial, {0.02, 0.01}, times, o);
    const double ratio = secular.ratios.at(0);
    r.checks.push_back(check("error ratio 4 +/- 25% (label-diagonal H0)", std::abs(ratio - 4.0) <= 1.0,
                             describe(secular)));

    o.part = HamiltonianPart::full;
    const auto full = tdpt_scaling(geom, p, omega, initial, {0.02, 0.01}, times, o);
    const double rf = full.ratios.at(0);
    r.checks.push_back(check("full H0 (diagnostic)", std::abs(rf - 4.0) <= 1.0, describe(full), true));
    return r;
}

CriterionResult criterion_phase_law() {
    CriterionResult r{5, "sub-geometric phase law and stability intervals", {}};
    const double delta = 1.0;
    const int samples = 601;
    const auto s = driven_series(3, 3, 0.01, delta, 6.0 * kPi / delta, samples);
    const auto phase = decompose(s.coeffs.at(0));
    const double dt = s.times[1] - s.times[0];

    // phi - (delta t/2 - pi/2) - arg(M) must be constant on each arc and a multiple of pi
    std::vector<double> arc_offsets;
    double worst_spread = 0.0;
    double worst_multiple = 0.0;
    std::size_t k = 0;
    while (k < phase.size()) {
        if (phase.singular[k]) {
            ++k;
            continue;
        }
        double lo = 1e300, hi = -1e300, first = 0.0;
        bool begun = false;
        for (; k < phase.size() && !phase.singular[k]; ++k) {
            const double off = phase.phi[k] - (delta * phase.times[k] / 2.0 - kPi / 2.0) - std::arg(s.overlap);
            if (!begun) first = off;
            begun = true;
            lo = std::min(lo, off);
            hi = std::max(hi, off);
        }
        worst_spread = std::max(worst_spread, hi - lo);
        worst_multiple = std::max(worst_multiple, std::abs(first / kPi - std::round(first / kPi)) * kPi);
        arc_offsets.push_back(first / kPi);
    }
    std::string offs;
    bool all_even = true;
    for (std::size_t a = 0; a < arc_offsets.size(); ++a) {
        offs += (a ? ", " : "") + fix(arc_offsets[a], 3);
        all_even = all_even && (std::lround(arc_offsets[a]) % 2 == 0);
    }
    r.checks.push_back(check("phi = delta t/2 - pi/2 on every arc", worst_spread < 1e-9 && worst_multiple < 1e-9,
                             std::to_string(arc_offsets.size()) + " arcs, max in-arc spread " + sci(worst_spread) +
                                 ", arc constants / pi = (" + offs + ")"));
    r.checks.push_back(check("arc constants are multiples of 2 pi (diagnostic)", all_even,
                             all_even ? "every arc on the printed branch"
                                      : "odd arcs sit on the branch shifted by pi: (1 - e^{ix}) = -2i sin(x/2) e^{ix/2} "
                                        "and sin(x/2) < 0 there",
                             true));

    const auto iv = stability_intervals(phase);
    const int expected = 6;
    bool ok = static_cast<int>(iv.size()) == expected;
    double worst_edge = 0.0;
    std::string found;
    for (std::size_t a = 0; a < iv.size(); ++a) {
        found += (a ? " " : "") + std::string(to_string(iv[a].label)) + "[" + fix(iv[a].t_start, 3) + "," +
                 fix(iv[a].t_end, 3) + "]";
        if (static_cast<int>(a) >= expected) continue;
        const Stability want = a % 2 == 0 ? Stability::growing : Stability::decaying;
        ok = ok && iv[a].label == want;
        worst_edge = std::max({worst_edge, std::abs(iv[a].t_start - a * kPi / delta),
                               std::abs(iv[a].t_end - (a + 1) * kPi / delta)});
    }
    ok = ok && worst_edge <= dt * (1.0 + 1e-9);
    r.checks.push_back(check("GROWING on (2k pi, (2k+1) pi), DECAYING on ((2k+1) pi, (2k+2) pi)", ok,
                             "max boundary offset " + sci(worst_edge) + " vs grid step " + sci(dt) + "; " + found));
    return r;
}

CriterionResult criterion_density() {
    CriterionResult r{6, "density-matrix phase structure", {}};
    struct Case {
        std::string name;
        std::vector<CoefficientSeries> coeffs;
        FlipConfig initial;
    };
    std::vector<Case> cases;
    {
        const auto s = driven_series(3, 3, 0.05, 1.0, 4.0 * kPi, 201);
        cases.push_back({"3x3 driven", s.coeffs, s.initial});
    }
    {
        // synthetic five-state active basis with unrelated energies, detunings and element phases
        const auto times = uniform_grid(10.0, 201);
        const double e_init = 0.7;
        const std::vector<double> energies{2.0, 3.5, -1.25, 0.4};
        const std::vector<double> detunings{1.0, 1.7, -0.6, 2.9};
        const std::vector<cplx> phases{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        std::vector<CoefficientSeries> cs;
        for (int m = 0; m < 4; ++m) {
            CoefficientSeries c;
            c.target = StateLabel(excite(FlipConfig(4, static_cast<std::uint64_t>(m)), 0));
            c.E_target = energies[m];
            c.E_initial = e_init;
            c.times = times;
            for (double t : times) c.values.push_back(coefficient_closed_form(phases[m], 0.05 * (m + 1), detunings[m], t));
            cs.push_back(std::move(c));
        }
        cases.push_back({"synthetic 5-state", cs, FlipConfig(4, 0xf)});
    }

    double diag_err = 0.0, arg_err = 0.0, herm = 0.0, trace_err = 0.0, shift_diag = 0.0, shift_arg = 0.0;
    int checked = 0;
    for (const auto& c : cases) {
        std::vector<SubGeometricPhaseSeries> ph;
        for (const auto& s : c.coeffs) ph.push_back(decompose(s));
        std::vector<CoefficientSeries> shifted = c.coeffs;
        std::vector<double> theta{0.0};
        for (std::size_t m = 0; m < shifted.size(); ++m) {
            theta.push_back(0.37 * (m + 1) - 1.1);
            for (auto& v : shifted[m].values) v *= std::exp(cplx{0.0, theta.back()});
        }
        const auto& times = c.coeffs.front().times;
        for (std::size_t k = 5; k < times.size(); k += 7) {
            const double t = times[k];
            const auto st = assemble_state(c.coeffs, t, c.initial);
            const auto rho = density_matrix(st);
            const auto rho_s = density_matrix(assemble_state(shifted, t, c.initial));
            const Eigen::Index n = rho.dim();
            std::vector<double> A{1.0}, phi{0.0}, E{st.energies[0]};
            double norm = 1.0;
            for (std::size_t m = 0; m < ph.size(); ++m) {
                A.push_back(ph[m].A[k]);
                phi.push_back(ph[m].singular[k] ? 0.0 : ph[m].phi[k]);
                E.push_back(c.coeffs[m].E_target);
                norm += A.back() * A.back();
            }
            herm = std::max(herm, rho.hermiticity_error());
            trace_err = std::max(trace_err, std::abs(rho.trace - 1.0));
            for (Eigen::Index a = 0; a < n; ++a) {
                diag_err = std::max(diag_err, std::abs(rho.entries(a, a) - cplx{A[a] * A[a] / norm, 0.0}));
                shift_diag = std::max(shift_diag, std::abs(rho_s.entries(a, a) - rho.entries(a, a)));
                for (Eigen::Index b = 0; b < n; ++b) {
                    if (a == b || std::abs(rho.entries(a, b)) < 1e-8) continue;
                    const double want = (phi[a] - phi[b]) + (E[b] - E[a]) * t;
                    arg_err = std::max(arg_err, std::abs(wrap_angle(std::arg(rho.entries(a, b)) - want)));
                    shift_arg = std::max(shift_arg, std::abs(wrap_angle(std::arg(rho_s.entries(a, b)) -
                                                                        std::arg(rho.entries(a, b)) -
                                                                        (theta[a] - theta[b]))));
                    ++checked;
                }
            }
        }
    }
    r.checks.push_back(check("diagonal = normalized A^2", diag_err < 1e-10, "max error " + sci(diag_err)));
    r.checks.push_back(check("diagonal invariant under per-state phase shifts", shift_diag < 1e-10,
                             "max change " + sci(shift_diag)));
    r.checks.push_back(check("off-diagonal argument (phi_m - phi_n) + (E_n - E_m) t", arg_err < 1e-10,
                             std::to_string(checked) + " entries, max error " + sci(arg_err)));
    r.checks.push_back(check("off-diagonal argument follows the shift theta_m - theta_n", shift_arg < 1e-10,
                             "max error " + sci(shift_arg)));
    r.checks.push_back(check("Hermitian, unit trace", herm < 1e-10 && trace_err < 1e-10,
                             "hermiticity " + sci(herm) + ", |tr - 1| " + sci(trace_err)));
    return r;
}

CriterionResult criterion_entropy(std::uint64_t seed) {
    CriterionResult r{7, "entanglement entropy", {}};
    const auto geom = build_lattice(2, 2);
    const double ln2 = std::log(2.0);
    const double s_max = 4 * ln2;
    double bound_violation = 0.0;
    auto bound = [&](double s, double smax) {
        bound_violation = std::max({bound_violation, -s, s - smax - 1e-12});
    };

    double prod = 0.0;
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
        const FlipConfig c(4, bits);
        for (const StateLabel& l : {StateLabel(c), StateLabel(excite(c, 0)), StateLabel(excite(c, 2))}) {
            const StateVector ket = build_product_ket(geom, l);
            for (auto part : {Sublattice::A, Sublattice::B}) {
                const double s = reduced_entropy(geom, ket, part).entropy;
                prod = std::max(prod, std::abs(s));
                bound(s, s_max);
            }
        }
    }
    r.checks.push_back(check("product kets: S = 0", prod < 1e-10, "48 kets, max |S| " + sci(prod)));

    StateVector bell = StateVector::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    const double sb = reduced_entropy(bell, 2, 0b01).entropy;
    const double sb2 = reduced_entropy(bell, 2, 0b10).entropy;
    bound(sb, ln2);
    r.checks.push_back(check("Bell pair: S = ln 2", std::abs(sb - ln2) < 1e-10 && std::abs(sb2 - ln2) < 1e-10,
                             "S = " + fix(sb, 12) + " / " + fix(sb2, 12)));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    double sym = 0.0;
    const int n_random = 25;
    for (int q = 0; q < n_random; ++q) {
        StateVector v(256);
        for (auto& x : v) x = cplx{g(rng), g(rng)};
        v.normalize();
        const double sa = reduced_entropy(geom, v, Sublattice::A).entropy;
        const double sbb = reduced_entropy(geom, v, Sublattice::B).entropy;
        sym = std::max(sym, std::abs(sa - sbb));
        bound(sa, s_max);
        bound(sbb, s_max);
    }
    r.checks.push_back(check("random kets: S_A = S_B", sym < 1e-9,
                             std::to_string(n_random) + " kets, max |S_A - S_B| " + sci(sym)));
    r.checks.push_back(check("0 <= S <= n_A ln 2", bound_violation <= 0.0, "max violation " + sci(std::max(0.0, bound_violation))));
    return r;
}

CriterionResult criterion_thermal(std::uint64_t seed) {
    CriterionResult r{8, "thermal mixing", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double sum_err = 0.0;
    for (int q = 0; q < 60; ++q) {
        std::vector<double> e(2 + q % 9);
        for (auto& x : e) x = u(rng);
        for (double kT : {0.01, 0.3, 1.0, 7.0, 0.0, std::numeric_limits<double>::infinity()}) {
            double s = 0.0;
            for (double w : thermal_weights(e, kT)) s += w;
            sum_err = std::max(sum_err, std::abs(s - 1.0));
        }
    }
    r.checks.push_back(check("weights sum to 1", sum_err < 1e-12, "360 ensembles, max |sum - 1| " + sci(sum_err)));

    const auto w = thermal_weights({0.0, 1.0}, 1.0);
    const bool two = std::abs(w[0] - 0.731059) < 1e-6 && std::abs(w[1] - 0.268941) < 1e-6;
    r.checks.push_back(check("E=(0,1), kT=1", two, "p = (" + fix(w[0], 9) + ", " + fix(w[1], 9) + ")"));

    const std::vector<double> e{0.5, -1.0, 2.0, -1.0, -1.0};
    const auto hot = thermal_weights(e, std::numeric_limits<double>::infinity());
    const auto warm = thermal_weights(e, 1e7);
    double hot_err = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k)
        hot_err = std::max({hot_err, std::abs(hot[k] - 0.2), std::abs(warm[k] - 0.2) * 1e-3});
    r.checks.push_back(check("kT -> inf: uniform", hot_err < 1e-9, "max deviation " + sci(hot_err)));

    const auto cold = thermal_weights(e, 0.0);
    const auto chilly = thermal_weights(e, 1e-3);
    double cold_err = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double want = e[k] == -1.0 ? 1.0 / 3.0 : 0.0;
        cold_err = std::max({cold_err, std::abs(cold[k] - want), std::abs(chilly[k] - want)});
    }
    r.checks.push_back(check("kT -> 0: uniform over the degenerate minimum", cold_err < 1e-12,
                             "g = 3, max deviation " + sci(cold_err)));

    std::vector<ThermalMember> members;
    for (std::size_t k = 0; k < 3; ++k) {
        StateVector v = StateVector::Zero(3);
        v[k] = 1.0;
        v[(k + 1) % 3] = cplx{0.0, 0.5};
        members.push_back({static_cast<double>(k), v});
    }
    const auto ens = thermal_mix(members, 0.8);
    const bool mixed = std::abs(ens.rho.trace - 1.0) < 1e-12 && ens.rho.hermiticity_error() < 1e-12 &&
                       ens.rho.purity() < 1.0;
    r.checks.push_back(check("mixed state: Hermitian, unit trace, purity < 1", mixed,
                             "trace " + fix(ens.rho.trace, 12) + ", purity " + fix(ens.rho.purity(), 6)));
    return r;
}

CriterionResult criterion_correlation() {
    CriterionResult r{9, "correlation engines", {}};
    const auto s = driven_series(3, 3, 0.05, 1.0, 4.0 * kPi, 201);
    const auto ph = decompose(s.coeffs.at(0));
    double worst = 0.0;
    int n = 0;
    for (std::size_t k = 1; k < ph.size(); k += 9)
        for (std::size_t k0 = 1; k0 < ph.size(); k0 += 13) {
            if (ph.singular[k] || ph.singular[k0]) continue;
            const auto f = correlation_formula(std::vector<double>{s.coeffs[0].E_target}, std::vector<SubGeometricPhaseSeries>{ph},
                                               ph.times[k], ph.times[k0]);
            worst = std::max(worst, std::abs(std::abs(f.value) - ph.A[k] * ph.A[k0]));
            ++n;
        }
    r.checks.push_back(check("single-term modulus = A(t) A(t0)", worst < 1e-10,
                             std::to_string(n) + " (t, t0) pairs, max error " + sci(worst)));

    const auto geom = build_lattice(2, 2);
    CouplingParams p;
    const auto initial = FlipConfig::empty(4);
    const auto target = connected_targets(geom, initial, 0).at(0);
    const double omega0 =
        state_energy(geom, p, StateLabel(target), Engine::label) - state_energy(geom, p, StateLabel(initial), Engine::label);
    p.D = 0.05;
    p.omega = omega0 - 1.0;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& b : nearest_neighbor_pairs(geom)) pairs.emplace_back(b.i, b.j);
    const double tol = 1e-8;
    const auto scan = correlation_exact_scan(geom, p, DriveSpec::exponential(p.D, p.omega), initial, pairs,
                                             all_component_pairs(), 1.0, tol);
    bool finite = true;
    for (const auto& rec : scan.records) finite = finite && std::isfinite(rec.value.real()) && std::isfinite(rec.value.imag());
    const std::size_t want = pairs.size() * 9;
    r.checks.push_back(check("exact scan over all bonds and component pairs", finite && scan.records.size() == want,
                             std::to_string(scan.records.size()) + " records (" + std::to_string(pairs.size()) +
                                 " bonds x 9), all finite"));
    r.checks.push_back(check("selection rule: nearest neighbour, same component (diagnostic)", scan.selection.holds(),
                             std::to_string(scan.selection.checked) + " records outside the rule, " +
                                 std::to_string(scan.selection.violations) + " above tol " + sci(tol) +
                                 ", max |value| " + sci(scan.selection.max_forbidden),
                             true));
    return r;
}

CriterionResult criterion_oracle() {
    CriterionResult r{10, "oracle quality", {}};
    const auto geom = build_lattice(2, 2);
    const CouplingParams p;
    const StateVector psi0 = build_product_ket(geom, FlipConfig::empty(4));
    const auto drive = DriveSpec::cosine(0.1, 1.0);
    const auto conv = convergence_order(geom, p, drive, psi0, 1.0, 0.1);
    r.checks.push_back(check("step-halving error ratio >= 15", conv.ratio >= 15.0,
                             "h = 0.1: " + sci(conv.error_h) + ", h/2: " + sci(conv.error_h2) + ", ratio " +
                                 fix(conv.ratio, 2) + " (order " + fix(conv.order, 2) + ")"));
    const OracleOptions o;
    const auto res = exact_evolve(geom, p, drive, psi0, uniform_grid(2.0 * kPi, 65), o);
    r.checks.push_back(check("norm drift over one drive period", res.norm_drift < 1e-8,
                             "drift " + sci(res.norm_drift) + " at tol " + sci(o.tol) + ", " + std::to_string(res.steps) +
                                 " steps"));
    return r;
}

}  // namespace

bool CriterionResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.diagnostic || c.passed; });
}

bool AcceptanceReport::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
}

std::vector<int> AcceptanceReport::failed_ids() const {
    std::vector<int> out;
    for (const auto& c : criteria)
        if (!c.passed()) out.push_back(c.id);
    return out;
}

std::string AcceptanceReport::render() const {
    std::ostringstream o;
    for (const auto& c : criteria) {
        o << (c.passed() ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "\n";
        for (const auto& s : c.checks) {
            const char* tag = s.diagnostic ? (s.passed ? "diag-ok " : "diag-dev") : (s.passed ? "ok      " : "FAILED  ");
            o << "      " << tag << " " << s.name << ": " << s.detail << "\n";
        }
    }
    const auto failed = failed_ids();
    o << "SUMMARY " << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass";
    if (!failed.empty()) {
        o << "; failing:";
        for (int id : failed) o << " " << id;
    }
    o << "\n";
    return o.str();
}

nlohmann::json AcceptanceReport::to_json() const {
    nlohmann::json crit = nlohmann::json::array();
    for (const auto& c : criteria) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& s : c.checks)
            checks.push_back({{"name", s.name}, {"passed", s.passed}, {"diagnostic", s.diagnostic}, {"detail", s.detail}});
        crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"checks", checks}});
    }
    return {{"criteria", crit}, {"all_passed", all_passed()}, {"failed", failed_ids()}};
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
    const std::vector<std::pair<int, std::function<CriterionResult()>>> all{
        {1, criterion_manifold},
        {2, criterion_plaquette_algebra},
        {3, criterion_closed_form},
        {4, criterion_tdpt_validity},
        {5, criterion_phase_law},
        {6, criterion_density},
        {7, [&] { return criterion_entropy(options.seed); }},
        {8, [&] { return criterion_thermal(options.seed); }},
        {9, criterion_correlation},
        {10, criterion_oracle},
    };
    AcceptanceReport rep;
    for (const auto& [id, run] : all) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
            continue;
        try {
            rep.criteria.push_back(run());
        } catch (const std::exception& e) {
            rep.criteria.push_back({id, "criterion " + std::to_string(id), {check("exception", false, e.what())}});
        }
    }
    return rep;
}

}  // namespace kitaev
