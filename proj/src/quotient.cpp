#include "nevlab/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "nevlab/errors.hpp"
#include "nevlab/quadrature.hpp"
#include "selfsim_internal.hpp"

namespace nevlab {

namespace {

constexpr double kPi = std::numbers::pi;

double positive_gauge_value(const Gauge& g, double t, const char* what) {
    double v = g(t);
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite, got " +
                          std::to_string(v));
    return v;
}

void require_unit_eps(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
}

/// Presplit hints for the window quadrature: the abscissas (relative to tau)
/// where Im f(. + iy) can spike. Pure acceleration; the adaptive quadrature
/// still does all the numerical work.
std::vector<double> window_cut_hints(const Measure& mu, double tau, double eps, double y) {
    std::vector<double> cuts{0.0};
    auto add = [&](double t) {
        double x = t - tau;
        if (x > -eps && x < eps) cuts.push_back(x);
    };
    for (const auto& comp : mu.components()) {
        if (const auto* a = std::get_if<Measure::Atoms>(&comp)) {
            for (const auto& [t, m] : a->points) add(t);
        } else if (const auto* p = std::get_if<Measure::PolynomialDensity>(&comp)) {
            for (const auto& piece : p->pieces) {
                add(piece.lo);
                add(piece.hi);
            }
        } else if (const auto* pw = std::get_if<Measure::PowerDensity>(&comp)) {
            add(pw->center - pw->radius);
            add(pw->center);
            add(pw->center + pw->radius);
        } else if (const auto* s = std::get_if<Measure::SelfSimilar>(&comp)) {
            // Breadth-first cell refinement over the window down to the
            // evaluation height, capped so the hint list stays small.
            const auto st = detail::selfsim_stats(*s);
            std::vector<std::pair<double, double>> level{{1.0, 0.0}}; // (scale, shift)
            for (int depth = 0; depth < 60 && !level.empty(); ++depth) {
                std::vector<std::pair<double, double>> next;
                for (const auto& [scale, shift] : level) {
                    double clo = scale * st.hull_lo + shift;
                    double chi = scale * st.hull_hi + shift;
                    if (chi < tau - eps || clo > tau + eps) continue;
                    if (scale * (st.hull_hi - st.hull_lo) <= 2.0 * y ||
                        next.size() + 2 * s->maps.size() > 32768) {
                        add(clo);
                        add(chi);
                        continue;
                    }
                    for (const auto& m : s->maps)
                        next.emplace_back(scale * m.ratio, scale * m.offset + shift);
                }
                if (next.empty()) {
                    for (const auto& [scale, shift] : level) {
                        double clo = scale * st.hull_lo + shift;
                        double chi = scale * st.hull_hi + shift;
                        if (chi >= tau - eps && clo <= tau + eps) {
                            add(clo);
                            add(chi);
                        }
                    }
                }
                level = std::move(next);
                if (cuts.size() > 32768) break;
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

} // namespace

const char* to_string(QuotientMethod m) {
    return m == QuotientMethod::Direct ? "direct" : "kernel";
}

std::vector<double> dyadic_eps_grid(double eps0, int count) {
    if (!(eps0 > 0.0) || count < 1) throw ArgumentError("grid needs eps0 > 0 and count >= 1");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) grid[static_cast<std::size_t>(k)] = eps0 * std::ldexp(1.0, -k);
    return grid;
}

double julia_fatou(const PickFunction& f, const Gauge& scale, cdouble z) {
    if (!(z.imag() > 0.0)) throw DomainError("the quotient is defined on the upper half-plane");
    double den = positive_gauge_value(scale, z.imag(), "scale(Im z)");
    return f(z).imag() / den;
}

double averaged_quotient_direct(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                double tau, double eps, double rel_tol) {
    require_unit_eps(eps);
    double y = positive_gauge_value(height, eps, "height(eps)");
    double den = positive_gauge_value(scale, y, "scale(height(eps))");

    const auto* triple = f.nevanlinna();
    std::vector<double> cuts;
    if (triple)
        cuts = window_cut_hints(triple->mu, tau, eps, y);
    else
        cuts = {0.0};

    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.max_panels = 500000;
    // With the explicit triple in hand, Im f(x + iy) = b y + (Poisson integral
    // of mu): same integrand, real arithmetic only.  The forms without a
    // representation fall back to the full complex evaluation.  The pointwise
    // evaluations only need to be one decade tighter than the quadrature
    // target: a uniform relative bias of delta on the (positive) integrand
    // moves the integral by at most delta relatively.
    double inner_tol = std::clamp(0.1 * rel_tol, 1e-13, 1e-8);
    std::function<double(double)> integrand;
    if (triple)
        integrand = [&](double x) {
            return triple->b * y + triple->mu.poisson({tau + x, y}, inner_tol);
        };
    else
        integrand = [&](double x) { return f(cdouble(tau + x, y)).imag(); };
    auto integral = integrate(integrand, -eps, eps, opt, cuts);
    return integral.value / (2.0 * eps * den);
}

double averaged_quotient_kernel(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                double tau, double eps) {
    require_unit_eps(eps);
    const auto* triple = f.nevanlinna();
    if (!triple)
        throw UnsupportedFormError(
            "the kernel route needs the explicit (a, b, mu) representation; "
            "use the direct route for composed or resolvent forms");
    double y = positive_gauge_value(height, eps, "height(eps)");
    double den = positive_gauge_value(scale, y, "scale(height(eps))");
    double kernel_integral = triple->mu.window_kernel(tau, eps, y);
    return (2.0 * eps * triple->b * y + kernel_integral) / (2.0 * eps * den);
}

double averaged_quotient(const PickFunction& f, const Gauge& scale, const Gauge& height,
                         double tau, double eps, QuotientMethod method, double rel_tol) {
    return method == QuotientMethod::Direct
               ? averaged_quotient_direct(f, scale, height, tau, eps, rel_tol)
               : averaged_quotient_kernel(f, scale, height, tau, eps);
}

AugurConstants fit_augur_constants(const Measure& mu, double b, const Gauge& height,
                                   double eps0) {
    require_unit_eps(eps0);
    if (!(b >= 0.0)) throw ArgumentError("the linear-term coefficient must be nonnegative");
    double y0 = positive_gauge_value(height, eps0, "height(eps0)");

    double finite_mass = 0.0;
    int lebesgue_lines = 0;
    for (const auto& comp : mu.components()) {
        if (std::holds_alternative<Measure::LebesgueLine>(comp)) {
            ++lebesgue_lines;
            continue;
        }
        finite_mass += Measure::from_components({comp}).total_mass();
    }

    AugurConstants c;
    c.L0 = 0.5 * std::atan(2.0 * eps0 / y0);
    c.L1 = kPi;
    c.L2 = finite_mass + b + 4.0 * eps0 * lebesgue_lines;
    return c;
}

AugurBounds augur_bounds(const Measure& mu, double b, const Gauge& scale, const Gauge& height,
                         double tau, double eps, const AugurConstants& constants) {
    require_unit_eps(eps);
    if (!(b >= 0.0)) throw ArgumentError("the linear-term coefficient must be nonnegative");
    if (!(constants.L0 >= 0.0 && constants.L1 >= 0.0 && constants.L2 >= 0.0))
        throw ArgumentError("bound constants must be nonnegative");

    auto cls = asymptotic_class(height, Gauge::identity());
    if (!implies_O(cls.cls))
        throw PreconditionError("the two-sided window bounds require the approach gauge to "
                                "vanish no slower than linearly",
                                "height is O(t) as t -> 0");
    double y = positive_gauge_value(height, eps, "height(eps)");
    if (y > eps * (1.0 + 1e-12))
        throw PreconditionError("eps is not small enough for the window bounds at this gauge",
                                "height(eps) <= eps");
    double ky = positive_gauge_value(scale, y, "scale(height(eps))");

    AugurBounds out;
    out.eps = eps;
    out.constants = constants;
    out.lower =
        constants.L0 * mu.window_mass(tau - eps, tau + eps, IntervalKind::Open) / (ky * eps);
    out.upper_density_term =
        constants.L1 * mu.window_mass(tau - 2.0 * eps, tau + 2.0 * eps, IntervalKind::Open) /
        (ky * eps);
    out.upper_tail_term = constants.L2 * y / (ky * eps * eps);
    return out;
}

CcLimEstimate cc_lim_estimate(const QuotientSeries& series) {
    return cc_lim_estimate(series.grid, series.values);
}

CcLimEstimate cc_lim_estimate(std::span<const double> grid, std::span<const double> values) {
    if (grid.size() != values.size())
        throw ArgumentError("series grid and values must have equal length");
    if (grid.size() < 8) throw ArgumentError("boundedness estimation needs >= 8 grid points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw ArgumentError("eps grid must be positive");
        if (i > 0 && !(grid[i] < grid[i - 1]))
            throw ArgumentError("eps grid must be strictly decreasing");
    }
    if (!(grid.front() / grid.back() >= 1000.0))
        throw ArgumentError("eps grid must span at least three decades");

    CcLimEstimate out;
    std::size_t tail_begin = grid.size() / 2;
    bool finite_tail = true;
    double tail_max = 0.0;
    std::vector<double> log_eps, log_val;
    for (std::size_t i = tail_begin; i < grid.size(); ++i) {
        double v = values[i];
        if (is_divergent(v) || !std::isfinite(v)) {
            finite_tail = false;
            continue;
        }
        tail_max = std::max(tail_max, v);
        if (v > 0.0) {
            log_eps.push_back(std::log(grid[i]));
            log_val.push_back(std::log(v));
        }
    }
    out.trend = log_eps.size() >= 2 ? linear_slope(log_eps, log_val) : 0.0;
    out.bounded = finite_tail && out.trend >= -0.05;
    out.limsup = finite_tail ? tail_max : kDivergent;
    out.heuristic = true;
    return out;
}

} // namespace nevlab
