#pragma once

#include <span>
#include <vector>

#include "nevlab/gauge.hpp"
#include "nevlab/measure.hpp"
#include "nevlab/numerics.hpp"
#include "nevlab/pick.hpp"

namespace nevlab {

// ------------------------------------------------------------------ //
// averaged boundary quotients of a Pick function
// ------------------------------------------------------------------ //

enum class QuotientMethod { Direct, Kernel };

const char* to_string(QuotientMethod m);

/// Values of the averaged quotient A(eps) along a decreasing eps grid.
/// Entries that could not be computed to tolerance carry the kDivergent
/// sentinel instead of a number.
struct QuotientSeries {
    double tau = 0.0;
    Gauge scale = Gauge::constant(1.0);  ///< the normalizing gauge applied to Im f
    Gauge height = Gauge::identity();    ///< eps -> evaluation height above the axis
    std::vector<double> grid;            ///< strictly decreasing positives
    std::vector<double> values;          ///< same length as grid
    QuotientMethod method = QuotientMethod::Direct;
};

/// The default eps grid: eps0 * 2^{-k}, k = 0 .. count-1.
std::vector<double> dyadic_eps_grid(double eps0 = 0.125, int count = 18);

/// Im f(z) / scale(Im z). With scale = identity this is the classical Julia
/// quotient for the upper half-plane.
double julia_fatou(const PickFunction& f, const Gauge& scale, cdouble z);

/// (1/2eps) * integral of x -> Im f(tau + x + i*height(eps)) over [-eps, eps],
/// divided by scale(height(eps)). Adaptive quadrature of pointwise evaluations
/// of f; works for every representation.
double averaged_quotient_direct(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                double tau, double eps, double rel_tol = 1e-9);

/// The same quantity computed from the explicit (a, b, mu) data instead:
///   [ 2 eps b height(eps) + integral of the window-angle kernel d mu ]
///     / (2 eps scale(height(eps))),
/// using per-component closed forms where available. Requires the explicit
/// representation; throws UnsupportedFormError otherwise (use the direct
/// route for composed or resolvent forms).
double averaged_quotient_kernel(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                double tau, double eps);

double averaged_quotient(const PickFunction& f, const Gauge& scale, const Gauge& height,
                         double tau, double eps, QuotientMethod method,
                         double rel_tol = 1e-9);

// ------------------------------------------------------------------ //
// two-sided bounds on A(eps) in terms of window masses
// ------------------------------------------------------------------ //

struct AugurConstants {
    double L0 = 0.0; ///< lower-bound constant
    double L1 = 0.0; ///< upper density constant
    double L2 = 0.0; ///< upper tail constant
};

struct AugurBounds {
    double eps = 0.0;
    double lower = 0.0;              ///< L0 * mu(tau-eps, tau+eps) / (scale(height(eps)) eps)
    double upper_density_term = 0.0; ///< L1 * mu(tau-2eps, tau+2eps) / (scale(height(eps)) eps)
    double upper_tail_term = 0.0;    ///< L2 * height(eps) / (scale(height(eps)) eps^2)
    AugurConstants constants;

    double upper() const { return upper_density_term + upper_tail_term; }
};

/// Safe constants fitted at the coarsest grid point eps0, valid for every
/// smaller eps when height is O(t):
///   L0 = arctan(2 eps0 / height(eps0)) / 2   (window-edge angle),
///   L1 = pi                                   (angle never exceeds pi),
///   L2 = finite mass + b + 4 eps0 per whole-line Lebesgue component
///        (tail angle <= 2 eps h / dist^2 with dist >= |t - tau| / 2).
AugurConstants fit_augur_constants(const Measure& mu, double b, const Gauge& height, double eps0);

/// Evaluate both bound sides at one eps. Preconditions: height is O(t)
/// (exact class when symbolic) and height(eps) <= eps; violations throw
/// PreconditionError naming the failed hypothesis.
AugurBounds augur_bounds(const Measure& mu, double b, const Gauge& scale, const Gauge& height,
                         double tau, double eps, const AugurConstants& constants);

// ------------------------------------------------------------------ //
// boundedness estimate for A(eps) as eps -> 0
// ------------------------------------------------------------------ //

struct CcLimEstimate {
    double limsup = 0.0;   ///< max over the tail half; kDivergent when unbounded
    bool bounded = false;  ///< finite tail and log-log slope >= -0.05
    double trend = 0.0;    ///< fitted slope of log value vs log eps over the tail
    bool heuristic = true; ///< always: a limit cannot be decided from samples
};

/// Requires >= 8 grid points spanning >= 3 decades. The tail is the last
/// (smallest-eps) half of the grid; sentinel entries there mean unbounded.
CcLimEstimate cc_lim_estimate(const QuotientSeries& series);

/// The same estimate for any sampled series over a decreasing eps grid.
CcLimEstimate cc_lim_estimate(std::span<const double> grid, std::span<const double> values);

} // namespace nevlab
