#include "nevlab/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <utility>

#include "nevlab/errors.hpp"
#include "nevlab/parallel.hpp"
#include "nevlab/sweep.hpp"

namespace nevlab {

namespace {

constexpr int kRayDepth = 28; ///< heights 2^0 .. 2^-27, finest ~7.5e-9
constexpr int kTailLen = 8;

struct RayProbe {
    std::vector<double> y;
    std::vector<cdouble> f;
    std::vector<double> quotient; ///< Im f / y
};

RayProbe probe_ray(const PickFunction& f, double tau) {
    RayProbe p;
    p.y.reserve(kRayDepth);
    p.f.reserve(kRayDepth);
    p.quotient.reserve(kRayDepth);
    for (int k = 0; k < kRayDepth; ++k) {
        double y = std::ldexp(1.0, -k);
        cdouble v = f(cdouble(tau, y));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericError("boundary ray sample is not finite", y);
        p.y.push_back(y);
        p.f.push_back(v);
        p.quotient.push_back(v.imag() / y);
    }
    return p;
}

/// y|f| stable (rel. variation < 5%) at a positive value over the tail.
bool pole_detected(const RayProbe& p, double& strength) {
    double lo = kDivergent, hi = 0.0;
    for (int i = kRayDepth - kTailLen; i < kRayDepth; ++i) {
        double s = p.y[i] * std::abs(p.f[i]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    strength = p.y.back() * std::abs(p.f.back());
    return hi > 0.0 && (hi - lo) <= 0.05 * hi;
}

double tail_diameter(const RayProbe& p) {
    double d = 0.0;
    for (int i = kRayDepth - kTailLen; i < kRayDepth; ++i)
        for (int j = i + 1; j < kRayDepth; ++j)
            d = std::max(d, std::abs(p.f[i] - p.f[j]));
    return d;
}

double max_tail_increment(const RayProbe& p) {
    double d = 0.0;
    for (int i = kRayDepth - kTailLen; i + 1 < kRayDepth; ++i)
        d = std::max(d, std::abs(p.f[i + 1] - p.f[i]));
    return d;
}

/// Log-log slope of the sample-to-sample increments over the lower half of
/// the ray. Positive: increments shrink with y (a Cauchy tail, so the values
/// converge). Negative: increments grow (the values run away).
double increment_trend(const RayProbe& p, int& positive_increments) {
    std::vector<double> log_y, log_d;
    for (int i = kRayDepth / 2; i + 1 < kRayDepth; ++i) {
        double d = std::abs(p.f[i + 1] - p.f[i]);
        if (d > 0.0 && std::isfinite(d)) {
            log_y.push_back(std::log(p.y[i]));
            log_d.push_back(std::log(d));
        }
    }
    positive_increments = static_cast<int>(log_y.size());
    if (positive_increments < 4) return 0.0;
    return linear_slope(log_y, log_d);
}

double quasi_unit(long i, unsigned seed, int dim) {
    // Additive low-discrepancy recurrences (inverse golden ratio and
    // sqrt(2)-1), offset deterministically by the seed.
    constexpr double kStep[2] = {0.6180339887498949, 0.41421356237309515};
    constexpr double kBase[2] = {0.1315389291911295, 0.7556042935912251};
    double v = std::fmod(kBase[dim] + 0.9843758640991521 * static_cast<double>(seed) +
                             static_cast<double>(i + 1) * kStep[dim],
                         1.0);
    return v < 0.0 ? v + 1.0 : v;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string(what) + " must be positive");
}

} // namespace

// ------------------------------------------------------------------ //
// Stolz geometry
// ------------------------------------------------------------------ //

StolzSpec StolzSpec::classical(double aperture) {
    if (!(aperture > 0.0) || aperture > 1.0)
        throw ArgumentError("classical aperture must lie in (0, 1]");
    StolzSpec s;
    s.kind = Kind::Classical;
    s.aperture = aperture;
    return s;
}

StolzSpec StolzSpec::shaped(Gauge lambda, double width) {
    require_positive(width, "shaped region width");
    StolzSpec s;
    s.kind = Kind::Shaped;
    s.lambda = std::move(lambda);
    s.width = width;
    return s;
}

bool stolz_membership(cdouble z, double tau, const StolzSpec& spec) {
    if (!(z.imag() > 0.0)) throw DomainError("stolz membership needs Im z > 0");
    const double y = z.imag();
    if (spec.kind == StolzSpec::Kind::Classical)
        return y >= spec.aperture * std::abs(z - tau) * (1.0 - 1e-12);

    const double x = std::abs(z.real() - tau);
    int dir = spec.lambda.monotone_direction();
    if (dir == 0)
        throw PreconditionError("the shaped membership test resolves the width by bisection "
                                "and needs a monotone height gauge",
                                "lambda monotone on (0, 1)");
    double lo = std::max(x, 0x1p-60);
    double hi = spec.width;
    if (lo > hi * (1.0 + 1e-12)) return false;
    lo = std::min(lo, hi);
    auto admits = [&](double c) { return spec.lambda(c) <= y * (1.0 + 1e-12); };
    // The floor is monotone in the width, so the minimal admissible width is
    // found by bisection between the two endpoints.
    double best = dir > 0 ? lo : hi;
    if (!admits(best)) return false;
    double worst = dir > 0 ? hi : lo;
    if (!admits(worst)) {
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (best + worst);
            (admits(mid) ? best : worst) = mid;
        }
    }
    return true;
}

// ------------------------------------------------------------------ //
// spectral classification
// ------------------------------------------------------------------ //

const char* to_string(SpectralClass c) {
    switch (c) {
    case SpectralClass::Ethereal: return "ethereal";
    case SpectralClass::Julia: return "julia";
    case SpectralClass::TrueAC: return "true_ac";
    default: return "crypto";
    }
}

SpectralVerdict classify_point(const PickFunction& f, double tau) {
    if (!std::isfinite(tau)) throw ArgumentError("tau must be finite");
    RayProbe p = probe_ray(f, tau);

    SpectralVerdict v;
    v.tau = tau;
    v.ray_heights = p.y;
    v.julia_quotient_trace = p.quotient;
    v.heuristic = true;

    double pole_strength = 0.0;
    const bool pole = pole_detected(p, pole_strength);

    const double diam = tail_diameter(p);
    const double inc = max_tail_increment(p);
    int positive_increments = 0;
    const double trend = increment_trend(p, positive_increments);
    const bool settled = diam <= 1e-9 * std::max(1.0, std::abs(p.f.back()));
    // An orbit that keeps swinging returns near its own tail start, so the
    // tail diameter dwarfs the net drift; drift and diameter coincide for
    // monotone approach or escape.
    const double net_drift = std::abs(p.f.back() - p.f[kRayDepth - kTailLen]);
    const bool oscillating = diam > 4.0 * net_drift &&
                             diam > 1e-5 * std::max(1.0, std::abs(p.f.back()));
    const bool converged = !oscillating &&
                           (settled || positive_increments < 4 || trend >= 0.05);
    const bool running_away = !oscillating && !converged && trend <= -0.05 &&
                              std::abs(p.f.back()) > 2.0 * std::abs(p.f[kRayDepth / 2]);

    std::ostringstream diag;
    if (pole) {
        v.cls = SpectralClass::Julia;
        diag << "pole: y|f(tau+iy)| stabilizes near " << pole_strength;
    } else if (oscillating) {
        v.cls = SpectralClass::Ethereal;
        diag << "oscillation: tail range " << diam << " exceeds 4x the net tail drift "
             << net_drift;
    } else if (converged) {
        cdouble limit = p.f.back();
        v.nt_limit_estimate = limit;
        // The limit's imaginary part counts as positive only when it
        // dominates the residual convergence scale of the tail.
        double im_scale = 0.0;
        for (int i = kRayDepth - kTailLen; i + 1 < kRayDepth; ++i)
            im_scale = std::max(im_scale, std::abs(p.f[i + 1].imag() - p.f[i].imag()));
        bool im_positive =
            limit.imag() > 0.0 && limit.imag() > kOscillationRangeFactor * im_scale;
        CcLimEstimate jc = cc_lim_estimate(p.y, p.quotient);
        if (im_positive) {
            v.cls = SpectralClass::TrueAC;
            diag << "ray limit " << limit << " with positive imaginary part";
        } else if (jc.bounded) {
            v.cls = SpectralClass::Julia;
            diag << "B-point: quotient trace bounded by " << jc.limsup << ", ray limit "
                 << limit;
        } else {
            v.cls = SpectralClass::Crypto;
            diag << "real ray limit " << limit.real() << " with unbounded quotient trace";
        }
    } else if (running_away) {
        v.cls = SpectralClass::Crypto;
        diag << "ray values grow without bound (boundary value read as infinity)";
    } else {
        v.cls = SpectralClass::Ethereal;
        if (diam > kOscillationRangeFactor * inc)
            diag << "oscillation: tail range " << diam << " exceeds "
                 << kOscillationRangeFactor << "x the increment scale " << inc;
        else
            diag << "no stable trend along the ray (tail range " << diam
                 << ", increment scale " << inc << ")";
    }
    v.diagnostics = diag.str();
    return v;
}

std::vector<SpectralVerdict> classify_many_serial(const PickFunction& f,
                                                  std::span<const double> taus) {
    std::vector<SpectralVerdict> out(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) out[i] = classify_point(f, taus[i]);
    return out;
}

std::vector<SpectralVerdict> classify_many(const PickFunction& f, std::span<const double> taus,
                                           int jobs) {
    std::vector<SpectralVerdict> out(taus.size());
    const long n = static_cast<long>(taus.size());
    [[maybe_unused]] const int workers = resolve_jobs(jobs);
#if defined(_OPENMP)
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                classify_point(f, taus[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(nevlab_classify_error)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = classify_point(f, taus[static_cast<std::size_t>(i)]);
#endif
    return out;
}

// ------------------------------------------------------------------ //
// enigma membership
// ------------------------------------------------------------------ //

EnigmaVerdict enigma_member(const PickFunction& f, const Gauge& scale, const Gauge& height,
                            double tau, int jobs) {
    auto grid = dyadic_eps_grid();
    QuotientMethod method =
        f.nevanlinna() ? QuotientMethod::Kernel : QuotientMethod::Direct;
    QuotientSeries base = build_series(f, scale, height, tau, grid, method, 1e-9, jobs);
    PickFunction flipped = PickFunction::negative_reciprocal(f);
    QuotientSeries recip =
        build_series(flipped, scale, height, tau, grid, QuotientMethod::Direct, 1e-9, jobs);

    EnigmaVerdict v;
    v.direct_branch = cc_lim_estimate(base);
    v.reciprocal_branch = cc_lim_estimate(recip);
    v.member = v.direct_branch.bounded || v.reciprocal_branch.bounded;
    v.heuristic = true;
    return v;
}

// ------------------------------------------------------------------ //
// constructed gauges
// ------------------------------------------------------------------ //

Gauge crypto_gauge(const PickFunction& f, double tau) {
    SpectralVerdict v = classify_point(f, tau);
    if (v.cls != SpectralClass::Crypto)
        throw ClassificationError(std::string("the quotient-gauge construction needs a "
                                              "cryptospectral point; classification here is ") +
                                  to_string(v.cls));
    if (!v.nt_limit_estimate || std::abs(*v.nt_limit_estimate) > 1e-3)
        throw ClassificationError("the quotient-gauge construction needs the boundary value "
                                  "translated to 0");

    auto grid = dyadic_eps_grid();
    QuotientMethod method =
        f.nevanlinna() ? QuotientMethod::Kernel : QuotientMethod::Direct;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(grid.size());
    for (std::size_t i = grid.size(); i-- > 0;) {
        double t = grid[i];
        samples.emplace_back(
            t, averaged_quotient(f, Gauge::constant(1.0), Gauge::identity(), tau, t, method));
    }
    return Gauge::tabulated(std::move(samples));
}

Gauge enigma_fortune_gauge(const Gauge& scale, const Gauge& height) {
    if (!implies_Omega(asymptotic_class(height, Gauge::identity()).cls))
        throw PreconditionError("the fortune construction needs the approach gauge to shrink "
                                "no faster than t",
                                "height = Omega(t) as t -> 0");
    if (asymptotic_class(scale, Gauge::constant(1.0)).cls != AsymptoticClass::LittleO)
        throw PreconditionError("the fortune construction needs the quotient gauge to vanish "
                                "at 0",
                                "scale = o(1) as t -> 0");
    return divide(multiply(height, compose(scale, height)), Gauge::identity());
}

// ------------------------------------------------------------------ //
// conformal invariance
// ------------------------------------------------------------------ //

ConformalReport conformal_invariance_check(const PickFunction& f,
                                           const std::array<double, 4>& mobius,
                                           const Gauge& scale, const Gauge& height,
                                           const Gauge& gamma, double tau, int jobs) {
    ConformalReport r;
    r.gamma_O_t = implies_O(asymptotic_class(gamma, Gauge::identity()).cls);
    if (!r.gamma_O_t)
        throw PreconditionError("invariance hypotheses: the comparison gauge must vanish at "
                                "least linearly",
                                "gamma = O(t) as t -> 0");
    r.gamma_monotone = gamma.monotone_direction() != 0;
    if (!r.gamma_monotone)
        throw PreconditionError("invariance hypotheses: the comparison gauge must be monotone",
                                "gamma monotone on (0, 1)");
    r.lambda_O_t = implies_O(asymptotic_class(height, Gauge::identity()).cls);
    if (!r.lambda_O_t)
        throw PreconditionError("invariance hypotheses: the approach gauge must vanish at "
                                "least linearly",
                                "height = O(t) as t -> 0");
    r.lambda_Omega_gamma = implies_Omega(asymptotic_class(height, gamma).cls);
    if (!r.lambda_Omega_gamma)
        throw PreconditionError("invariance hypotheses: the approach gauge must dominate the "
                                "comparison gauge",
                                "height = Omega(gamma) as t -> 0");
    r.scale_augury = is_augury(compose(scale, height), gamma).holds;
    if (!r.scale_augury)
        throw PreconditionError("invariance hypotheses: the composed quotient gauge must be "
                                "integrable against the comparison gauge",
                                "scale o height is a gamma-augury");

    SpectralVerdict v = classify_point(f, tau);
    if (v.nt_limit_estimate) {
        cdouble w = *v.nt_limit_estimate;
        // The boundary value is a ray-limit estimate, so "singular" must be
        // read at the estimate's resolution: the denominator has to clear a
        // tolerance proportional to the map's coefficient scale.
        cdouble den = mobius[2] * w + mobius[3];
        double coeff_scale = std::abs(mobius[2]) + std::abs(mobius[3]);
        if (std::abs(den) <= 1e-3 * (1.0 + std::abs(w)) * coeff_scale)
            throw SingularityError("the Mobius map is singular at the estimated boundary value");
    }

    r.base = enigma_member(f, scale, height, tau, jobs);
    r.composed = enigma_member(PickFunction::mobius(mobius, f), scale, height, tau, jobs);
    r.agree = r.base.member == r.composed.member;
    r.heuristic = true;
    return r;
}

// ------------------------------------------------------------------ //
// horocyclic continuity
// ------------------------------------------------------------------ //

HorocycleProfile horocyclic_profile(const PickFunction& f, const Gauge& gamma, double alpha,
                                    double tau, std::span<const double> beta_grid,
                                    int net_points, unsigned seed, int jobs) {
    require_positive(alpha, "alpha");
    if (net_points < 16) throw ArgumentError("horocycle net needs at least 16 points");
    if (beta_grid.empty()) throw ArgumentError("beta grid must be nonempty");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        require_positive(beta_grid[i], "beta");
        if (i > 0 && !(beta_grid[i] > beta_grid[i - 1]))
            throw ArgumentError("beta grid must be strictly increasing");
    }
    if (gamma.monotone_direction() == 0)
        throw PreconditionError("the horocyclic region needs a monotone shape gauge",
                                "gamma monotone on (0, 1)");
    if (!implies_O(asymptotic_class(gamma, Gauge::identity()).cls))
        throw PreconditionError("the horocyclic region needs a tangential shape gauge",
                                "gamma = O(t) as t -> 0");

    SpectralVerdict v = classify_point(f, tau);
    if (!v.nt_limit_estimate)
        throw ClassificationError(
            std::string("horocyclic continuity needs a convergent boundary value; "
                        "classification here is ") +
            to_string(v.cls));
    const cdouble w = *v.nt_limit_estimate;

    HorocycleProfile out;
    out.beta = {beta_grid.begin(), beta_grid.end()};
    out.sup_deviation.assign(beta_grid.size(), 0.0);
    out.boundary_value = w;
    out.heuristic = true;

    [[maybe_unused]] const int workers = resolve_jobs(jobs);
    std::vector<double> deviations(static_cast<std::size_t>(net_points));
    for (std::size_t bi = 0; bi < beta_grid.size(); ++bi) {
        const double beta = beta_grid[bi];
        auto sample = [&](long i) {
            double u = quasi_unit(i, seed, 0);
            double s = quasi_unit(i, seed, 1);
            double x = (2.0 * u - 1.0) / beta;
            double ball = 1.0 / (beta * beta) - x * x;
            if (!(ball > 0.0)) return 0.0;
            double y_hi = std::sqrt(ball);
            double arg = alpha * std::abs(x);
            double y_lo = arg > 0.0 ? beta * gamma(arg) : 0.0;
            y_lo = std::max(y_lo, 0x1p-40 / beta);
            if (!(y_lo < y_hi)) return 0.0; // fiber empty: curve above the ball
            double y = y_lo * std::pow(y_hi / y_lo, s);
            return std::abs(f(cdouble(tau + x, y)) - w);
        };
        const long n = net_points;
#if defined(_OPENMP)
        std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
        for (long i = 0; i < n; ++i) {
            try {
                deviations[static_cast<std::size_t>(i)] = sample(i);
            } catch (...) {
#pragma omp critical(nevlab_horocycle_error)
                if (!first_error) first_error = std::current_exception();
                deviations[static_cast<std::size_t>(i)] = 0.0;
            }
        }
        if (first_error) std::rethrow_exception(first_error);
#else
        for (long i = 0; i < n; ++i) deviations[static_cast<std::size_t>(i)] = sample(i);
#endif
        out.sup_deviation[bi] = *std::max_element(deviations.begin(), deviations.end());
    }
    return out;
}

// ------------------------------------------------------------------ //
// kernel-difference bound
// ------------------------------------------------------------------ //

KernelBoundReport kernel_extreme_bound_check(const Gauge& gamma, double beta, double C,
                                             int net_size) {
    require_positive(beta, "beta");
    require_positive(C, "order constant");
    if (net_size < 4) throw ArgumentError("kernel bound net needs at least 4 points");
    if (!implies_O(asymptotic_class(gamma, Gauge::identity()).cls))
        throw PreconditionError("the kernel bound needs a gauge vanishing at least linearly",
                                "gamma = O(t) as t -> 0");

    const int n = std::max(2, static_cast<int>(std::lround(std::sqrt(double(net_size)))));
    const double t_lo = 0x1p-30, t_hi = 0.9999;
    const double x_lo = 0x1p-30, x_hi = 0.49995;

    std::vector<cdouble> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double x = x_lo * std::pow(x_hi / x_lo, (j + 0.5) / n);
        z[static_cast<std::size_t>(j)] = cdouble(x, beta * gamma(2.0 * x));
    }

    KernelBoundReport report;
    report.bound = std::max(2.0 * C, (1.0 + beta * C) / beta);
    for (int i = 0; i < n; ++i) {
        double t = t_lo * std::pow(t_hi / t_lo, (i + 0.5) / n);
        double gt = gamma(t);
        if (gt > C * t * (1.0 + 1e-9))
            throw ArgumentError("claimed order constant is too small: gamma(t) > C t on the net");
        for (int j = 0; j < n; ++j) {
            double val = std::abs(gt / (t - z[static_cast<std::size_t>(j)]) - gt / t);
            report.observed_sup = std::max(report.observed_sup, val);
        }
    }
    report.holds = report.observed_sup <= report.bound * (1.0 + 1e-9);
    return report;
}

} // namespace nevlab
