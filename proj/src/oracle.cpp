#include "kitaev/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "kitaev/kernels.hpp"

namespace kitaev {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

bool drive_is_zero(const DriveSpec& d) { return d.kind == DriveSpec::Kind::exponential && d.D == 0.0; }

class Rhs {
public:
    Rhs(const LatticeGeometry& geom, const CouplingParams& params, const DriveSpec& drive, const OracleOptions& opt)
        : terms_(h0_terms(geom, params, opt.part)), drive_(drive), n_h0_(terms_.size()) {
        if (!drive_is_zero(drive)) {
            drive_string_ = drive_string(geom, opt.drive_plaquette);
            terms_.push_back(drive_string_);
        }
    }

    // out = -i H(t) y
    void operator()(double t, const StateVector& y, StateVector& out) {
        if (terms_.size() > n_h0_) terms_.back().phase = drive_(t) * drive_string_.phase;
        kernels::omp::apply_sum(terms_, kernels::view(y), kernels::view(out));
        out *= cplx{0.0, -1.0};
    }

    double h0_expectation(const StateVector& y) const {
        cplx e{0.0, 0.0};
        for (std::size_t k = 0; k < n_h0_; ++k) e += kernels::omp::expectation(terms_[k], kernels::view(y));
        return e.real();
    }

private:
    std::vector<kernels::PauliString> terms_;
    kernels::PauliString drive_string_;
    const DriveSpec& drive_;
    std::size_t n_h0_;
};

}  // namespace

EvolutionResult exact_evolve(const LatticeGeometry& geom, const CouplingParams& params, const DriveSpec& drive,
                             const StateVector& psi0, const std::vector<double>& times, const OracleOptions& opt) {
    if (geom.n_sites() > opt.hilbert_cap) throw std::length_error("exact_evolve: Hilbert cap exceeded");
    if (psi0.size() != (Eigen::Index{1} << geom.n_sites())) throw std::invalid_argument("exact_evolve: psi0 dimension");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("exact_evolve: psi0 is not normalized");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("exact_evolve: tol must be > 0");
    if (times.empty()) throw std::invalid_argument("exact_evolve: empty time grid");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] < times[k - 1]) throw std::invalid_argument("exact_evolve: times must be non-decreasing");
    params.validate();

    Rhs f(geom, params, drive, opt);
    const Eigen::Index n = psi0.size();
    StateVector y = psi0, y5(n), tmp(n), err(n);
    std::array<StateVector, 7> k;
    for (auto& v : k) v.resize(n);

    EvolutionResult res;
    res.times = times;
    res.kets.reserve(times.size());
    const double e0 = f.h0_expectation(y);

    double t = times.front();
    f(t, y, k[0]);
    double h = opt.fixed_step > 0.0 ? opt.fixed_step : std::min(0.1, 0.01 / std::max(1e-12, k[0].norm()));
    const bool adaptive = opt.fixed_step <= 0.0;

    auto record = [&] {
        res.kets.push_back(y);
        res.norm_drift = std::max(res.norm_drift, std::abs(y.norm() - 1.0));
        res.energy_drift = std::max(res.energy_drift, std::abs(f.h0_expectation(y) - e0));
    };
    record();

    for (std::size_t out = 1; out < times.size(); ++out) {
        const double target = times[out];
        while (target - t > 1e-14 * std::max(1.0, std::abs(target))) {
            if (res.steps + res.rejected >= opt.max_steps) throw std::runtime_error("exact_evolve: max_steps exceeded");
            const bool clipped = h >= target - t;
            const double hs = clipped ? target - t : h;

            tmp = y + hs * a21 * k[0];
            f(t + c2 * hs, tmp, k[1]);
            tmp = y + hs * (a31 * k[0] + a32 * k[1]);
            f(t + c3 * hs, tmp, k[2]);
            tmp = y + hs * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
            f(t + c4 * hs, tmp, k[3]);
            tmp = y + hs * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
            f(t + c5 * hs, tmp, k[4]);
            tmp = y + hs * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
            f(t + hs, tmp, k[5]);
            y5 = y + hs * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
            f(t + hs, y5, k[6]);

            if (!adaptive) {
                ++res.steps;
                t += hs;
                y.swap(y5);
                std::swap(k[0], k[6]);
                continue;
            }
            err = hs * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);
            const double en = err.norm() / opt.tol;
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (en <= 1.0) {
                ++res.steps;
                t += hs;
                y.swap(y5);
                std::swap(k[0], k[6]);
                h = clipped ? std::max(h, hs * fac) : hs * fac;
            } else {
                ++res.rejected;
                h = hs * std::min(fac, 1.0);
                if (h < opt.min_step) {
                    std::ostringstream msg;
                    msg << "exact_evolve: step size underflow at t = " << t;
                    throw StepUnderflowError(msg.str(), t);
                }
            }
        }
        t = target;
        record();
    }
    return res;
}

ActiveBasis make_active_basis(const LatticeGeometry& geom, const FlipConfig& initial,
                              const std::vector<CoefficientSeries>& targets, int hilbert_cap) {
    ActiveBasis b;
    const StateLabel init(initial);
    b.ids.push_back(init.id());
    b.kets.push_back(build_product_ket(geom, init, hilbert_cap));
    b.energies.push_back(targets.empty() ? 0.0 : targets.front().E_initial);
    for (const auto& s : targets) {
        b.ids.push_back(s.target.id());
        b.kets.push_back(build_product_ket(geom, s.target, hilbert_cap));
        b.energies.push_back(s.E_target);
    }
    return b;
}

double orthonormality_error(const std::vector<StateVector>& kets) {
    double worst = 0.0;
    for (std::size_t i = 0; i < kets.size(); ++i)
        for (std::size_t j = i; j < kets.size(); ++j) {
            const cplx g = kets[i].dot(kets[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

std::vector<std::vector<cplx>> tdpt_prediction(const std::vector<CoefficientSeries>& targets, std::size_t n_times) {
    std::vector<std::vector<cplx>> p;
    p.emplace_back(n_times, cplx{1.0, 0.0});
    for (const auto& s : targets) {
        if (s.values.size() != n_times) throw std::invalid_argument("tdpt_prediction: series length mismatch");
        p.push_back(s.values);
    }
    return p;
}

ProjectionReport project_and_compare(const EvolutionResult& result, const ActiveBasis& basis,
                                     const std::vector<std::vector<cplx>>& prediction) {
    if (prediction.size() != basis.kets.size()) throw std::invalid_argument("project_and_compare: row count mismatch");
    ProjectionReport rep;
    rep.orthonormality = orthonormality_error(basis.kets);
    if (rep.orthonormality > 1e-10) throw std::invalid_argument("project_and_compare: basis is not orthonormal");
    const std::size_t nt = result.times.size();
    for (std::size_t m = 0; m < basis.kets.size(); ++m) {
        if (prediction[m].size() != nt) throw std::invalid_argument("project_and_compare: time grid mismatch");
        ProjectionRow row;
        row.id = basis.ids[m];
        row.tdpt = prediction[m];
        row.exact.resize(nt);
        for (std::size_t k = 0; k < nt; ++k) {
            const double t = result.times[k];
            row.exact[k] = kernels::omp::inner(kernels::view(basis.kets[m]), kernels::view(result.kets[k])) *
                           std::exp(cplx{0.0, basis.energies[m] * t});
            row.max_error = std::max(row.max_error, std::abs(row.exact[k] - row.tdpt[k]));
        }
        rep.max_error = std::max(rep.max_error, row.max_error);
        if (m > 0) rep.max_target_error = std::max(rep.max_target_error, row.max_error);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ScalingStudy tdpt_scaling(const LatticeGeometry& geom, const CouplingParams& params, double omega,
                          const FlipConfig& initial, const std::vector<double>& Ds, const std::vector<double>& times,
                          const OracleOptions& options) {
    const auto targets = connected_targets(geom, initial, options.drive_plaquette, Engine::label, options.hilbert_cap);
    const StateVector psi0 = build_product_ket(geom, initial, options.hilbert_cap);
    ScalingStudy study;
    for (double D : Ds) {
        CouplingParams p = params;
        p.D = D;
        p.omega = omega;
        const auto drive = DriveSpec::exponential(D, omega);
        const auto coeffs = evolve_coefficients(geom, p, drive, initial, targets, times);
        const auto basis = make_active_basis(geom, initial, coeffs, options.hilbert_cap);
        const auto exact = exact_evolve(geom, p, drive, psi0, times, options);
        study.points.push_back({D, project_and_compare(exact, basis, tdpt_prediction(coeffs, times.size()))});
    }
    for (std::size_t k = 0; k + 1 < study.points.size(); ++k)
        study.ratios.push_back(study.points[k].report.max_error / study.points[k + 1].report.max_error);
    return study;
}

ConvergenceStudy convergence_order(const LatticeGeometry& geom, const CouplingParams& params, const DriveSpec& drive,
                                   const StateVector& psi0, double t_end, double h, const OracleOptions& options) {
    const std::vector<double> grid{0.0, t_end};
    OracleOptions ref = options;
    ref.fixed_step = 0.0;
    ref.tol = kReferenceTol;
    const StateVector exact = exact_evolve(geom, params, drive, psi0, grid, ref).kets.back();

    ConvergenceStudy c;
    c.h = h;
    OracleOptions fixed = options;
    fixed.fixed_step = h;
    c.error_h = (exact_evolve(geom, params, drive, psi0, grid, fixed).kets.back() - exact).norm();
    fixed.fixed_step = h / 2;
    c.error_h2 = (exact_evolve(geom, params, drive, psi0, grid, fixed).kets.back() - exact).norm();
    c.ratio = c.error_h / c.error_h2;
    c.order = std::log2(c.ratio);
    return c;
}

nlohmann::json error_report_json(const ScalingStudy& scaling, const ConvergenceStudy* convergence) {
    nlohmann::json targets = nlohmann::json::array();
    if (!scaling.points.empty()) {
        const auto& rows0 = scaling.points.front().report.rows;
        for (std::size_t m = 0; m < rows0.size(); ++m) {
            nlohmann::json vs = nlohmann::json::array();
            double worst = 0.0;
            for (const auto& pt : scaling.points) {
                const double e = pt.report.rows.at(m).max_error;
                vs.push_back({pt.D, e});
                worst = std::max(worst, e);
            }
            targets.push_back({{"id", rows0[m].id}, {"max_error", worst}, {"error_vs_D", vs}});
        }
    }
    nlohmann::json j{{"targets", targets}, {"ratios", scaling.ratios}};
    if (convergence)
        j["convergence_order"] = {{"h", convergence->h},
                                  {"error_h", convergence->error_h},
                                  {"error_h2", convergence->error_h2},
                                  {"ratio", convergence->ratio},
                                  {"order", convergence->order}};
    else
        j["convergence_order"] = nullptr;
    return j;
}

}  // namespace kitaev
