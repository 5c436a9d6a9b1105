#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kitaev/perturbation.hpp"

namespace kitaev {

/// c(t) = A(t) exp(i phi(t)) = exp(a(t) + i phi(t)) per sample.
/// Singular samples (A below the zero threshold) carry a = -inf and phi = NaN; phi
/// restarts on the principal branch after each singular gap.
struct SubGeometricPhaseSeries {
    std::vector<double> times;
    std::vector<double> A;
    std::vector<double> a;
    std::vector<double> phi;
    std::vector<std::uint8_t> singular;

    std::size_t size() const { return times.size(); }
    std::size_t singular_count() const;
    bool all_singular() const { return singular_count() == size(); }
};

/// Minimal-jump continuation of raw arguments; a singular flag breaks the chain.
std::vector<double> unwrap_phase(const std::vector<double>& raw, const std::vector<std::uint8_t>& singular = {});

/// eps_zero <= 0 selects the default 1e-12 * max A.
SubGeometricPhaseSeries decompose(const std::vector<double>& times, const std::vector<cplx>& values,
                                  double eps_zero = 0.0);
SubGeometricPhaseSeries decompose(const CoefficientSeries& series, double eps_zero = 0.0);

enum class Stability { growing, decaying };

const char* to_string(Stability s);

struct StabilityInterval {
    double t_start = 0.0;
    double t_end = 0.0;
    Stability label = Stability::growing;
};

/// Maximal intervals on which the finite-difference slope of a(t) stays above +slope_tol
/// (growing) or below -slope_tol (decaying). slope_tol <= 0 selects 1e-9 * max|a|.
/// Needs at least three non-singular samples.
std::vector<StabilityInterval> stability_intervals(const SubGeometricPhaseSeries& phase, double slope_tol = 0.0);

/// (t, E - phi(t)/t) for every non-singular sample with t > 0.
std::vector<std::pair<double, double>> effective_level(double E, const SubGeometricPhaseSeries& phase);

/// Resonance-shifted transition frequency between levels a and b: the difference of their
/// effective levels at common sample times.
std::vector<std::pair<double, double>> shifted_transition(double E_a, const SubGeometricPhaseSeries& phase_a,
                                                          double E_b, const SubGeometricPhaseSeries& phase_b);

/// Phase series of a constant unit amplitude (the initial state at this order).
SubGeometricPhaseSeries constant_phase(const std::vector<double>& times);

}  // namespace kitaev
