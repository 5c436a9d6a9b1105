#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kitaev/hamiltonian.hpp"

namespace kitaev {

/// Time profile B(t) of the drive. The exponential kind is D exp(-i omega t); the custom
/// kind is an arbitrary callable, optionally with knot times where it is not smooth.
struct DriveSpec {
    enum class Kind { exponential, custom };

    Kind kind = Kind::exponential;
    double D = 0.0;
    double omega = 0.0;
    std::function<cplx(double)> custom;
    std::vector<double> knots;

    static DriveSpec exponential(double D, double omega);
    static DriveSpec constant(double D);
    /// Real drive D cos(omega t); Hermitian, used for unitarity checks.
    static DriveSpec cosine(double D, double omega);
    /// Piecewise-linear interpolation of samples (times strictly increasing). D is the
    /// nominal amplitude used to normalize transition elements.
    static DriveSpec sampled(std::vector<double> times, std::vector<cplx> values, double D);

    cplx operator()(double t) const;
};

/// First-order transition coefficient c(t_k) of one target on a time grid.
struct CoefficientSeries {
    StateLabel target;
    double E_target = 0.0;
    double E_initial = 0.0;
    cplx element{0.0, 0.0};  // M, with B(t) factored out
    std::vector<double> times;
    std::vector<cplx> values;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved_error() const { return achieved_; }

private:
    double achieved_;
};

/// Below this |delta * t| the closed form switches to its Taylor expansion.
inline constexpr double kResonanceSeriesThreshold = 1e-4;

/// phase * (a + i b) with a = (D/delta)(1 - cos(delta t)), b = -(D/delta) sin(delta t);
/// delta = omega_0 - omega, hbar = 1.
cplx coefficient_closed_form(cplx phase, double D, double delta, double t);

/// (1/i) * integral_0^t exp(i delta_E t') B(t') M / D dt' by adaptive Gauss-Kronrod
/// panels, to absolute error tol.
cplx coefficient_quadrature(cplx M, const DriveSpec& drive, double delta_E, double t, double tol = 1e-10,
                            int max_panels = 20000);

/// Generic adaptive complex integral of f over [a, b] with the same panel scheme.
cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
                        std::vector<double> breakpoints = {}, int max_panels = 20000);

struct EvolveOptions {
    Engine engine = Engine::label;
    double quad_tol = 1e-10;
    int hilbert_cap = kDefaultHilbertCap;
};

/// One series per target. Uses the closed form for exponential drives and quadrature
/// otherwise; targets with M = 0 give identically zero series. The initial config
/// keeps amplitude 1 at this order and is not part of the returned set.
std::vector<CoefficientSeries> evolve_coefficients(const LatticeGeometry& geom, const CouplingParams& params,
                                                   const DriveSpec& drive, const FlipConfig& initial,
                                                   const std::vector<ExcitedLabel>& targets,
                                                   const std::vector<double>& times,
                                                   const EvolveOptions& options = {});

/// Every excited label of the drive plaquette: excite(c, i) for all 2^N configs c.
std::vector<ExcitedLabel> drive_targets(int n_plaquettes, int drive_plaquette);

/// Excited labels reachable from `initial` at first order (nonzero transition element).
/// Labels with identical site signatures are one ket; only the lowest config is kept.
std::vector<ExcitedLabel> connected_targets(const LatticeGeometry& geom, const FlipConfig& initial,
                                            int drive_plaquette, Engine engine = Engine::label,
                                            int hilbert_cap = kDefaultHilbertCap);

/// Uniform grid of `samples` points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int samples);

/// Sum of the series whose target base config has weight k, divided by sqrt(C(N, k)).
CoefficientSeries aggregate_weight_class(const std::vector<CoefficientSeries>& series, int n_plaquettes, int k);

}  // namespace kitaev
