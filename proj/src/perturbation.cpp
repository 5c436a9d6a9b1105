#include "kitaev/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

namespace kitaev {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kronrod = kWgk[7] * fc;
    cplx gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const cplx fsum = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

DriveSpec DriveSpec::exponential(double D, double omega) {
    DriveSpec d;
    d.kind = Kind::exponential;
    d.D = D;
    d.omega = omega;
    return d;
}

DriveSpec DriveSpec::constant(double D) {
    DriveSpec d;
    d.kind = Kind::custom;
    d.D = D;
    d.custom = [D](double) { return cplx{D, 0.0}; };
    return d;
}

DriveSpec DriveSpec::cosine(double D, double omega) {
    DriveSpec d;
    d.kind = Kind::custom;
    d.D = D;
    d.omega = omega;
    d.custom = [D, omega](double t) { return cplx{D * std::cos(omega * t), 0.0}; };
    return d;
}

DriveSpec DriveSpec::sampled(std::vector<double> times, std::vector<cplx> values, double D) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("DriveSpec::sampled: need >= 2 matching samples");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("DriveSpec::sampled: times must increase strictly");
    DriveSpec d;
    d.kind = Kind::custom;
    d.D = D;
    d.knots = times;
    d.custom = [t = std::move(times), v = std::move(values)](double x) -> cplx {
        if (x <= t.front()) return v.front();
        if (x >= t.back()) return v.back();
        const auto it = std::upper_bound(t.begin(), t.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - t.begin());
        const double w = (x - t[k - 1]) / (t[k] - t[k - 1]);
        return (1.0 - w) * v[k - 1] + w * v[k];
    };
    return d;
}

cplx DriveSpec::operator()(double t) const {
    if (kind == Kind::exponential) return D * std::exp(cplx{0.0, -omega * t});
    if (!custom) throw std::logic_error("DriveSpec: custom drive without a profile");
    return custom(t);
}


cplx coefficient_closed_form(cplx phase, double D, double delta, double t) {
    if (t < 0) throw std::invalid_argument("coefficient_closed_form: t must be >= 0");
    const double x = delta * t;
    double a;
    double b;
    if (std::abs(x) < kResonanceSeriesThreshold) {
        const double x2 = x * x;
        a = D * t * (0.5 * x - x * x2 / 24.0);
        b = -D * t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    } else {
        a = D / delta * (1.0 - std::cos(x));
        b = -D / delta * std::sin(x);
    }
    return phase * cplx{a, b};
}

cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
                        std::vector<double> breakpoints, int max_panels) {
    if (!(tol > 0)) throw std::invalid_argument("integrate_adaptive: tol must be > 0");
    if (b == a) return 0.0;
    if (b < a) return -integrate_adaptive(f, b, a, tol, std::move(breakpoints), max_panels);
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::erase_if(breakpoints, [&](double x) { return x < a || x > b; });
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::priority_queue<Panel> queue;
    cplx total{0.0, 0.0};
    double err = 0.0;
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
        Panel p = gauss_kronrod(f, breakpoints[k - 1], breakpoints[k]);
        total += p.value;
        err += p.error;
        queue.push(p);
    }
    int panels = static_cast<int>(queue.size());
    while (err > tol) {
        if (panels >= max_panels) {
            std::ostringstream msg;
            msg << "integrate_adaptive: no convergence after " << panels << " panels (error estimate " << err
                << ", tol " << tol << ")";
            throw QuadratureError(msg.str(), err);
        }
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            std::ostringstream msg;
            msg << "integrate_adaptive: panel width underflow (error estimate " << err << ")";
            throw QuadratureError(msg.str(), err);
        }
        queue.pop();
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    // re-sum to drop the running-update rounding
    total = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        queue.pop();
    }
    return total;
}

cplx coefficient_quadrature(cplx M, const DriveSpec& drive, double delta_E, double t, double tol, int max_panels) {
    if (!(tol > 0)) throw std::invalid_argument("coefficient_quadrature: tol must be > 0");
    if (t < 0) throw std::invalid_argument("coefficient_quadrature: t must be >= 0");
    if (t == 0.0 || drive.D == 0.0 || M == cplx{0.0, 0.0}) return 0.0;
    const cplx scale = M / drive.D / cplx{0.0, 1.0};
    auto integrand = [&](double s) { return scale * std::exp(cplx{0.0, delta_E * s}) * drive(s); };
    // split so that each starting panel spans at most ~pi of integrand phase
    const double freq = std::abs(delta_E) + std::abs(drive.omega);
    const int n_init = 1 + static_cast<int>(std::ceil(t * freq / std::numbers::pi));
    std::vector<double> breaks = drive.knots;
    for (int k = 1; k < n_init; ++k) breaks.push_back(t * k / n_init);
    return integrate_adaptive(integrand, 0.0, t, tol, std::move(breaks), max_panels);
}

std::vector<double> uniform_grid(double t_max, int samples) {
    if (samples < 2 || !(t_max > 0)) throw std::invalid_argument("uniform_grid: need samples >= 2 and t_max > 0");
    std::vector<double> g(samples);
    for (int k = 0; k < samples; ++k) g[k] = t_max * k / (samples - 1);
    return g;
}

std::vector<ExcitedLabel> drive_targets(int n_plaquettes, int drive_plaquette) {
    if (n_plaquettes > 24) throw std::invalid_argument("drive_targets: at most 24 plaquettes");
    std::vector<ExcitedLabel> out;
    out.reserve(std::size_t{1} << n_plaquettes);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_plaquettes); ++b)
        out.push_back(excite(FlipConfig(n_plaquettes, b), drive_plaquette));
    return out;
}

std::vector<ExcitedLabel> connected_targets(const LatticeGeometry& geom, const FlipConfig& initial,
                                            int drive_plaquette, Engine engine, int hilbert_cap) {
    std::vector<ExcitedLabel> out;
    std::set<std::vector<int>> seen;
    for (const auto& t : drive_targets(geom.n_plaquettes(), drive_plaquette)) {
        if (std::abs(transition_overlap(geom, StateLabel(initial), t, engine, hilbert_cap)) <= 1e-12) continue;
        // labels whose configs differ by a signature-kernel element are the same ket
        if (seen.insert(flip_signature(geom, StateLabel(t)).signs).second) out.push_back(t);
    }
    return out;
}

std::vector<CoefficientSeries> evolve_coefficients(const LatticeGeometry& geom, const CouplingParams& params,
                                                   const DriveSpec& drive, const FlipConfig& initial,
                                                   const std::vector<ExcitedLabel>& targets,
                                                   const std::vector<double>& times, const EvolveOptions& options) {
    params.validate();
    if (times.empty() || times.front() != 0.0) throw std::invalid_argument("evolve_coefficients: grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("evolve_coefficients: grid must increase strictly");
    if (initial.size() != geom.n_plaquettes()) throw std::invalid_argument("evolve_coefficients: initial config size");

    const double e_init = state_energy(geom, params, StateLabel(initial), options.engine, options.hilbert_cap);
    std::vector<CoefficientSeries> out(targets.size());
    const auto n = static_cast<std::int64_t>(targets.size());
    std::vector<std::string> errors(targets.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        try {
            auto& s = out[k];
            s.target = StateLabel(targets[k]);
            s.E_initial = e_init;
            s.E_target = state_energy(geom, params, s.target, options.engine, options.hilbert_cap);
            const cplx overlap =
                transition_overlap(geom, StateLabel(initial), targets[k], options.engine, options.hilbert_cap);
            s.element = drive.D * overlap;
            s.times = times;
            s.values.assign(times.size(), cplx{0.0, 0.0});
            if (s.element == cplx{0.0, 0.0}) continue;
            const double omega0 = s.E_target - s.E_initial;
            for (std::size_t j = 0; j < times.size(); ++j) {
                s.values[j] = drive.kind == DriveSpec::Kind::exponential
                                  ? coefficient_closed_form(overlap, drive.D, omega0 - drive.omega, times[j])
                                  : coefficient_quadrature(s.element, drive, omega0, times[j], options.quad_tol);
            }
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("evolve_coefficients: " + e);
    return out;
}

CoefficientSeries aggregate_weight_class(const std::vector<CoefficientSeries>& series, int n_plaquettes, int k) {
    CoefficientSeries agg;
    const double norm = std::sqrt(static_cast<double>(weight_class_size(n_plaquettes, k)));
    if (norm == 0.0) throw std::out_of_range("aggregate_weight_class: weight out of range");
    bool first = true;
    for (const auto& s : series) {
        if (s.target.config.weight() != k) continue;
        if (first) {
            agg.times = s.times;
            agg.values.assign(s.times.size(), cplx{0.0, 0.0});
            agg.target = s.target;
            agg.E_initial = s.E_initial;
            agg.E_target = s.E_target;
            first = false;
        }
        if (s.times.size() != agg.times.size()) throw std::invalid_argument("aggregate_weight_class: grid mismatch");
        for (std::size_t j = 0; j < s.values.size(); ++j) agg.values[j] += s.values[j] / norm;
        agg.element += s.element / norm;
    }
    return agg;
}

}  // namespace kitaev
