#include "nevlab/regularity.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "nevlab/errors.hpp"
#include "nevlab/sweep.hpp"

namespace nevlab {

namespace {

/// t -> F(C t); symbolic whenever F is a pure power law.
Gauge scaled_argument(const Gauge& F, double C) {
    if (C == 1.0) return F;
    return compose(F, Gauge::power_law(C, 1.0));
}

bool bounded_near_zero(const Gauge& g) {
    return implies_O(asymptotic_class(g, Gauge::constant(1.0)).cls);
}

/// Least-squares power-law fit c * t^s through positive dyadic samples of g.
/// Falls back to the constant gauge when g vanishes near 0 (fewer than four
/// positive samples): any admissible gauge works for a locally null measure.
Gauge fit_power_law(const Gauge& g) {
    std::vector<double> log_t, log_v;
    for (int k = 2; k <= 22; ++k) {
        double t = std::ldexp(1.0, -k);
        double v = g(t);
        if (v > 0.0 && std::isfinite(v)) {
            log_t.push_back(std::log(t));
            log_v.push_back(std::log(v));
        }
    }
    if (log_t.size() < 4) return Gauge::constant(1.0);
    double s = linear_slope(log_t, log_v);
    double mean_t = std::accumulate(log_t.begin(), log_t.end(), 0.0) / double(log_t.size());
    double mean_v = std::accumulate(log_v.begin(), log_v.end(), 0.0) / double(log_v.size());
    double coeff = std::exp(mean_v - s * mean_t);
    return Gauge::power_law(coeff, s);
}

} // namespace

const char* to_string(RegularityKind k) {
    switch (k) {
    case RegularityKind::SubDensity: return "sub_density";
    case RegularityKind::Fortunate: return "fortunate";
    default: return "gamma_regular";
    }
}

RegularityVerdict sub_density_verdict(const Measure& mu, const Gauge& F, double tau,
                                      std::span<const double> C_sweep) {
    if (C_sweep.empty()) throw ArgumentError("the constant sweep must be nonempty");
    auto grid = dyadic_eps_grid();
    std::vector<double> masses(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        masses[i] = mu.window_mass(tau - grid[i], tau + grid[i], IntervalKind::Open);

    RegularityVerdict out;
    out.kind = RegularityKind::SubDensity;
    out.heuristic = true;
    bool first = true;
    for (double C : C_sweep) {
        if (!(C > 0.0)) throw ArgumentError("sweep constants must be positive");
        std::vector<double> quotient(grid.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            quotient[i] = masses[i] / (F(C * grid[i]) * grid[i]);
            sup = std::max(sup, quotient[i]);
        }
        if (first) {
            out.C_used = C;
            out.statistic = sup;
            first = false;
        }
        if (cc_lim_estimate(grid, quotient).bounded) {
            out.holds = true;
            out.C_used = C;
            out.statistic = sup;
            return out;
        }
    }
    return out;
}

RegularityVerdict fortunate_verdict(const PickFunction& f, const Gauge& F, double tau) {
    FortuneDecomposition dec = decompose_fortune(F); // rejects non-power-law gauges

    // Tail-control condition: height(t) / (F(t) t^2) bounded near 0. The
    // decomposition guarantees this by construction; the check documents it
    // and guards future decompositions. C rescales only the coefficient of a
    // power law, so one symbolic check covers the whole sweep.
    Gauge tail_ratio = divide(dec.lambda, multiply(F, Gauge::power_law(1.0, 2.0)));
    bool tail_ok = bounded_near_zero(tail_ratio);

    auto grid = dyadic_eps_grid();
    QuotientMethod method =
        f.nevanlinna() ? QuotientMethod::Kernel : QuotientMethod::Direct;
    QuotientSeries series = build_series_serial(f, dec.k, dec.lambda, tau, grid, method);
    CcLimEstimate cc = cc_lim_estimate(series);

    RegularityVerdict out;
    out.kind = RegularityKind::Fortunate;
    out.holds = tail_ok && cc.bounded;
    out.C_used = 1.0;
    out.statistic = cc.limsup;
    out.heuristic = true;
    return out;
}

RegularityVerdict gamma_regular_verdict(const Measure& mu, const Gauge& gamma, double tau,
                                        std::span<const double> C_sweep) {
    if (C_sweep.empty()) throw ArgumentError("the constant sweep must be nonempty");
    if (gamma.monotone_direction() == 0)
        throw PreconditionError("the reciprocal integral needs a monotone gauge",
                                "gamma monotone");
    if (!bounded_near_zero(gamma))
        throw PreconditionError("the reciprocal integral needs a gauge bounded at 0",
                                "gamma = O(1) as t -> 0");

    Measure local = tau == 0.0 ? mu : mu.shifted(-tau);
    RegularityVerdict out;
    out.kind = RegularityKind::GammaRegular;
    out.heuristic = true;
    out.C_used = C_sweep.front();
    out.statistic = kDivergent;
    for (double C : C_sweep) {
        if (!(C > 0.0)) throw ArgumentError("sweep constants must be positive");
        IntegralOutcome result;
        try {
            result = local.reciprocal_gauge_integral(scaled_argument(gamma, C));
        } catch (const DomainError&) {
            continue; // gauge not evaluable out to C * radius: inadmissible witness
        }
        if (!result.divergent) {
            out.holds = true;
            out.C_used = C;
            out.statistic = result.value;
            return out;
        }
    }
    return out;
}

EquivalenceReport regfort_equivalence_check(const PickFunction& f, const Gauge& gamma,
                                            double tau) {
    const auto* triple = f.nevanlinna();
    if (!triple)
        throw UnsupportedFormError("the equivalence check needs the explicit (a, b, mu) form");
    Measure mu = triple->mu;
    Gauge witness = Gauge::pointwise(
        [mu, tau](double t) {
            return mu.window_mass(tau - t, tau + t, IntervalKind::Open) / t;
        },
        "window-density");
    return regfort_equivalence_check(f, gamma, tau, witness);
}

EquivalenceReport regfort_equivalence_check(const PickFunction& f, const Gauge& gamma,
                                            double tau, const Gauge& supplied_witness) {
    if (!gamma.is_power_law())
        throw UnsupportedFormError("the equivalence check needs a power-law gamma");
    if (!bounded_near_zero(gamma))
        throw PreconditionError("the equivalence check needs gamma bounded at 0",
                                "gamma = O(1) as t -> 0");
    const auto* triple = f.nevanlinna();
    if (!triple)
        throw UnsupportedFormError("the equivalence check needs the explicit (a, b, mu) form");

    EquivalenceReport report;
    report.witness = supplied_witness;
    report.fitted = supplied_witness.is_pure_power_law() ? supplied_witness
                                                         : fit_power_law(supplied_witness);
    report.regular = gamma_regular_verdict(triple->mu, gamma, tau);
    report.augury = is_augury(supplied_witness, gamma);
    report.fortunate = fortunate_verdict(f, report.fitted, tau);
    report.agree = report.regular.holds == (report.augury.holds && report.fortunate.holds);
    report.heuristic = true;
    return report;
}

} // namespace nevlab
