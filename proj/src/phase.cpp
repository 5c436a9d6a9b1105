#include "kitaev/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kitaev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::size_t SubGeometricPhaseSeries::singular_count() const {
    return static_cast<std::size_t>(std::count(singular.begin(), singular.end(), std::uint8_t{1}));
}

std::vector<double> unwrap_phase(const std::vector<double>& raw, const std::vector<std::uint8_t>& singular) {
    if (!singular.empty() && singular.size() != raw.size())
        throw std::invalid_argument("unwrap_phase: flag count mismatch");
    std::vector<double> out(raw.size(), kNaN);
    bool chained = false;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (!singular.empty() && singular[k]) {
            chained = false;
            continue;
        }
        if (!chained) {
            out[k] = raw[k];
            chained = true;
            continue;
        }
        out[k] = raw[k] + kTwoPi * std::round((out[k - 1] - raw[k]) / kTwoPi);
    }
    return out;
}

SubGeometricPhaseSeries decompose(const std::vector<double>& times, const std::vector<cplx>& values, double eps_zero) {
    if (times.size() != values.size()) throw std::invalid_argument("decompose: times/values size mismatch");
    SubGeometricPhaseSeries s;
    s.times = times;
    s.A.resize(values.size());
    double max_a = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        s.A[k] = std::abs(values[k]);
        max_a = std::max(max_a, s.A[k]);
    }
    const double threshold = eps_zero > 0.0 ? eps_zero : 1e-12 * max_a;
    s.singular.resize(values.size());
    std::vector<double> raw(values.size(), 0.0);
    s.a.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        // all-zero series: threshold is 0 and every sample is singular
        const bool sing = s.A[k] <= threshold;
        s.singular[k] = sing ? 1 : 0;
        s.a[k] = sing ? -std::numeric_limits<double>::infinity() : std::log(s.A[k]);
        raw[k] = sing ? 0.0 : std::arg(values[k]);
    }
    s.phi = unwrap_phase(raw, s.singular);
    return s;
}

SubGeometricPhaseSeries decompose(const CoefficientSeries& series, double eps_zero) {
    return decompose(series.times, series.values, eps_zero);
}

const char* to_string(Stability s) { return s == Stability::growing ? "GROWING" : "DECAYING"; }

std::vector<StabilityInterval> stability_intervals(const SubGeometricPhaseSeries& phase, double slope_tol) {
    const std::size_t n = phase.size();
    if (n - phase.singular_count() < 3) throw std::invalid_argument("stability_intervals: need >= 3 non-singular samples");
    if (slope_tol <= 0.0) {
        double max_abs = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (!phase.singular[k]) max_abs = std::max(max_abs, std::abs(phase.a[k]));
        slope_tol = 1e-9 * max_abs;
    }
    auto ok = [&](std::size_t k) { return k < n && !phase.singular[k]; };

    // slope of a(t) at each sample: centered where both neighbours are usable
    std::vector<double> slope(n, kNaN);
    for (std::size_t k = 0; k < n; ++k) {
        if (!ok(k)) continue;
        const bool left = k > 0 && ok(k - 1);
        const bool right = ok(k + 1);
        if (left && right)
            slope[k] = (phase.a[k + 1] - phase.a[k - 1]) / (phase.times[k + 1] - phase.times[k - 1]);
        else if (right)
            slope[k] = (phase.a[k + 1] - phase.a[k]) / (phase.times[k + 1] - phase.times[k]);
        else if (left)
            slope[k] = (phase.a[k] - phase.a[k - 1]) / (phase.times[k] - phase.times[k - 1]);
    }
    auto cls = [&](std::size_t k) -> int {
        if (!ok(k) || std::isnan(slope[k])) return 0;
        if (slope[k] > slope_tol) return 1;
        if (slope[k] < -slope_tol) return -1;
        return 0;
    };

    std::vector<StabilityInterval> out;
    std::size_t k = 0;
    while (k < n) {
        const int c = cls(k);
        if (c == 0) {
            ++k;
            continue;
        }
        std::size_t end = k;
        while (end + 1 < n && cls(end + 1) == c) ++end;

        StabilityInterval iv;
        iv.label = c > 0 ? Stability::growing : Stability::decaying;
        // left edge
        if (k == 0) {
            iv.t_start = phase.times[0];
        } else if (!ok(k - 1)) {
            iv.t_start = phase.times[k - 1];
        } else if (cls(k - 1) == -c) {
            const double s0 = slope[k - 1];
            const double s1 = slope[k];
            iv.t_start = phase.times[k - 1] + (phase.times[k] - phase.times[k - 1]) * s0 / (s0 - s1);
        } else {
            iv.t_start = phase.times[k];
        }
        // right edge
        if (end + 1 >= n) {
            iv.t_end = phase.times[end];
        } else if (!ok(end + 1)) {
            iv.t_end = phase.times[end + 1];
        } else if (cls(end + 1) == -c) {
            const double s0 = slope[end];
            const double s1 = slope[end + 1];
            iv.t_end = phase.times[end] + (phase.times[end + 1] - phase.times[end]) * s0 / (s0 - s1);
        } else {
            iv.t_end = phase.times[end];
        }
        out.push_back(iv);
        k = end + 1;
    }
    return out;
}

std::vector<std::pair<double, double>> effective_level(double E, const SubGeometricPhaseSeries& phase) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < phase.size(); ++k) {
        if (phase.singular[k] || !(phase.times[k] > 0.0)) continue;
        out.emplace_back(phase.times[k], E - phase.phi[k] / phase.times[k]);
    }
    return out;
}

std::vector<std::pair<double, double>> shifted_transition(double E_a, const SubGeometricPhaseSeries& phase_a,
                                                          double E_b, const SubGeometricPhaseSeries& phase_b) {
    const auto la = effective_level(E_a, phase_a);
    const auto lb = effective_level(E_b, phase_b);
    std::vector<std::pair<double, double>> out;
    std::size_t j = 0;
    for (const auto& [t, ea] : la) {
        while (j < lb.size() && lb[j].first < t) ++j;
        if (j < lb.size() && lb[j].first == t) out.emplace_back(t, ea - lb[j].second);
    }
    return out;
}

SubGeometricPhaseSeries constant_phase(const std::vector<double>& times) {
    return decompose(times, std::vector<cplx>(times.size(), cplx{1.0, 0.0}));
}

}  // namespace kitaev
