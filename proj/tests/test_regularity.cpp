#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nevlab/errors.hpp"
#include "nevlab/regularity.hpp"

using namespace nevlab;

namespace {

Measure uniform_measure() {
    return Measure::from_components(
        {Measure::PolynomialDensity{{{-1.0, 1.0, {1.0, 0, 0, 0}}}}});
}

Measure abs_density() {
    return Measure::from_components({Measure::PowerDensity{0.0, 1.0, 1.0, 1.0}});
}

Measure sqrt_density() {
    return Measure::from_components({Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}});
}

PickFunction transform_of(Measure mu) {
    return PickFunction::from_nevanlinna(0.0, 0.0, std::move(mu));
}

const double kCantorDim = std::log(2.0) / std::log(3.0);

} // namespace

TEST_CASE("sub-density verdicts match hand-computed window masses") {
    // A unit atom has window mass 1 at every radius, so mass/(F * eps) blows up.
    RegularityVerdict atom = sub_density_verdict(Measure::atomic({{0.0, 1.0}}),
                                                 Gauge::constant(1.0), 0.0);
    CHECK(atom.kind == RegularityKind::SubDensity);
    CHECK_FALSE(atom.holds);
    CHECK(atom.heuristic);

    // Uniform density: mass(-eps, eps) = 2 eps, so the quotient is exactly 2.
    RegularityVerdict flat = sub_density_verdict(uniform_measure(), Gauge::constant(1.0), 0.0);
    CHECK(flat.holds);
    CHECK(flat.statistic == doctest::Approx(2.0).epsilon(1e-12));

    // The middle-thirds measure against its own scaling exponent: the window
    // quotient oscillates by bounded factors, so the verdict must hold, while
    // a constant gauge underestimates the decay and must fail.
    Measure cantor = Measure::cantor();
    RegularityVerdict tuned =
        sub_density_verdict(cantor, Gauge::power_law(1.0, kCantorDim - 1.0), 0.0);
    CHECK(tuned.holds);
    CHECK(tuned.statistic > 0.0);
    RegularityVerdict blunt = sub_density_verdict(cantor, Gauge::constant(1.0), 0.0);
    CHECK_FALSE(blunt.holds);

    // Monotone in the gauge: anything that holds for F keeps holding for a
    // pointwise larger F.
    RegularityVerdict small = sub_density_verdict(abs_density(), Gauge::identity(), 0.0);
    RegularityVerdict large = sub_density_verdict(abs_density(), Gauge::power_law(1.0, 0.5), 0.0);
    CHECK(small.holds);
    CHECK((!small.holds || large.holds));

    CHECK_THROWS_AS(sub_density_verdict(cantor, Gauge::constant(1.0), 0.0,
                                        std::vector<double>{}),
                    ArgumentError);
}

TEST_CASE("fortunate verdicts follow the quotient series") {
    // Uniform density with a constant gauge: the averaged quotient tends to
    // pi times the density, so the series stays bounded.
    RegularityVerdict flat = fortunate_verdict(transform_of(uniform_measure()),
                                               Gauge::constant(1.0), 0.0);
    CHECK(flat.kind == RegularityKind::Fortunate);
    CHECK(flat.holds);
    CHECK(std::isfinite(flat.statistic));

    // z -> -1/z concentrates all boundary mass at 0; with the constant gauge
    // the quotient grows like 1/eps.
    PickFunction pole = PickFunction::from_nevanlinna(0.0, 0.0, Measure::atomic({{0.0, 1.0}}));
    RegularityVerdict spiked = fortunate_verdict(pole, Gauge::constant(1.0), 0.0);
    CHECK_FALSE(spiked.holds);
    // Every sampled point is finite, so the statistic is the tail supremum:
    // A(eps) = atan(1/eps)/eps peaks at the finest point eps = 2^-20.
    double fine = std::ldexp(1.0, -20);
    CHECK(spiked.statistic == doctest::Approx(std::atan(1.0 / fine) / fine).epsilon(1e-9));

    // z -> z has no boundary mass at all: bounded for any admissible gauge.
    PickFunction linear = PickFunction::from_nevanlinna(0.0, 1.0, Measure::atomic({}));
    CHECK(fortunate_verdict(linear, Gauge::constant(1.0), 0.0).holds);
    CHECK(fortunate_verdict(linear, Gauge::power_law(1.0, 0.3), 0.0).holds);

    // Only pure power laws decompose constructively.
    CHECK_THROWS_AS(fortunate_verdict(linear,
                                      Gauge::tabulated({{0.25, 0.5}, {0.5, 0.7}, {1.0, 1.0}}),
                                      0.0),
                    UnsupportedFormError);
}

TEST_CASE("gamma-regular verdicts integrate the shifted reciprocal") {
    Gauge half = Gauge::power_law(1.0, 0.5);

    // An atom sitting exactly at tau makes 1/gamma(|t - tau|) infinite.
    RegularityVerdict at_site = gamma_regular_verdict(Measure::atomic({{0.3, 1.0}}), half, 0.3);
    CHECK(at_site.kind == RegularityKind::GammaRegular);
    CHECK_FALSE(at_site.holds);
    CHECK(at_site.statistic == kDivergent);

    // The same atom looked at from far away is integrable.
    RegularityVerdict off_site = gamma_regular_verdict(Measure::atomic({{0.3, 1.0}}), half, 0.0);
    CHECK(off_site.holds);
    // 1 / sqrt(C * 0.3) with the first sweep constant C = 1/2.
    CHECK(off_site.C_used == doctest::Approx(0.5));
    CHECK(off_site.statistic == doctest::Approx(1.0 / std::sqrt(0.15)).epsilon(1e-9));

    // Density |t| against t^1.5: integral 2/C^1.5 * int_0^1 t^-0.5 dt = 4/C^1.5.
    RegularityVerdict soft = gamma_regular_verdict(abs_density(), Gauge::power_law(1.0, 1.5), 0.0);
    CHECK(soft.holds);
    CHECK(soft.statistic == doctest::Approx(4.0 / std::pow(0.5, 1.5)).epsilon(1e-6));

    // Density |t| against t^2: int dt/t diverges for every constant.
    RegularityVerdict hard = gamma_regular_verdict(abs_density(), Gauge::power_law(1.0, 2.0), 0.0);
    CHECK_FALSE(hard.holds);

    // Monotone in gamma on the same measure: t^1.5 holds, so anything larger
    // near 0 (smaller reciprocal) holds too.
    RegularityVerdict softer =
        gamma_regular_verdict(abs_density(), Gauge::power_law(1.0, 1.2), 0.0);
    CHECK(softer.holds);

    // Preconditions: bounded at the origin and monotone on (0, 1).
    CHECK_THROWS_AS(gamma_regular_verdict(abs_density(), Gauge::power_law(1.0, -0.5), 0.0),
                    PreconditionError);
    Gauge wiggle = Gauge::pointwise(
        [](double t) { return 1.0 + 0.5 * std::sin(40.0 * t); }, "wiggle");
    CHECK_THROWS_AS(gamma_regular_verdict(abs_density(), wiggle, 0.0), PreconditionError);

    // A gauge only defined on (0, 1): constants that push the argument past 1
    // are skipped as inadmissible and a smaller constant still wins.
    Gauge clipped = Gauge::pointwise(
        [](double t) {
            if (t >= 1.0) throw DomainError("clipped gauge evaluated at t >= 1");
            return std::sqrt(t);
        },
        "clipped-sqrt");
    std::vector<double> sweep{2.0, 0.5};
    RegularityVerdict rescued = gamma_regular_verdict(abs_density(), clipped, 0.0, sweep);
    CHECK(rescued.holds);
    CHECK(rescued.C_used == doctest::Approx(0.5));
}

TEST_CASE("fortunate agrees with sub-density on power-law gauges") {
    struct Pair {
        Measure mu;
        Gauge F;
        bool expect;
    };
    std::vector<Pair> corpus;
    corpus.push_back({uniform_measure(), Gauge::constant(1.0), true});
    corpus.push_back({abs_density(), Gauge::identity(), true});
    corpus.push_back({Measure::atomic({{0.0, 1.0}}), Gauge::constant(1.0), false});
    corpus.push_back({sqrt_density(), Gauge::power_law(1.0, 0.5), true});
    corpus.push_back({sqrt_density(), Gauge::power_law(1.0, 0.8), false});

    for (const auto& item : corpus) {
        RegularityVerdict window = sub_density_verdict(item.mu, item.F, 0.0);
        RegularityVerdict series = fortunate_verdict(transform_of(item.mu), item.F, 0.0);
        CHECK(window.holds == item.expect);
        CHECK(series.holds == item.expect);
        if (window.holds) CHECK(std::isfinite(window.statistic));
        if (series.holds) CHECK(std::isfinite(series.statistic));
    }
}

TEST_CASE("equivalence reports reconcile the three notions") {
    // sqrt-density is t^1.2-regular: exponent bookkeeping 0.5 - 1.2 > -1.
    PickFunction soft = transform_of(sqrt_density());
    EquivalenceReport a = regfort_equivalence_check(soft, Gauge::power_law(1.0, 1.2), 0.0);
    CHECK(a.regular.holds);
    CHECK(a.augury.holds);
    CHECK(a.fortunate.holds);
    CHECK(a.agree);
    CHECK(a.heuristic);
    // The fitted witness must recover mass(-t,t)/t = (4/3) t^0.5.
    const auto* fit = a.fitted.power_terms();
    REQUIRE(fit != nullptr);
    CHECK(fit->power == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit->coeff == doctest::Approx(4.0 / 3.0).epsilon(1e-6));

    // Same measure, much smaller gauge: 0.5 - 1.8 < -1, so regularity and the
    // augury both fail while the window density itself stays fortunate.
    EquivalenceReport b = regfort_equivalence_check(soft, Gauge::power_law(1.0, 1.8), 0.0);
    CHECK_FALSE(b.regular.holds);
    CHECK_FALSE(b.augury.holds);
    CHECK(b.fortunate.holds);
    CHECK(b.agree);

    // A unit atom: never gamma-regular, and its window density 1/t is never
    // an augury, though it is trivially its own fortunate gauge.
    PickFunction pole = PickFunction::from_nevanlinna(0.0, 0.0, Measure::atomic({{0.0, 1.0}}));
    EquivalenceReport c = regfort_equivalence_check(pole, Gauge::power_law(1.0, 0.5), 0.0);
    CHECK_FALSE(c.regular.holds);
    CHECK_FALSE(c.augury.holds);
    CHECK(c.fortunate.holds);
    CHECK(c.agree);

    // The middle-thirds measure against t^0.5: dimension 0.63 beats 0.5.
    PickFunction devil = transform_of(Measure::cantor());
    EquivalenceReport d = regfort_equivalence_check(devil, Gauge::power_law(1.0, 0.5), 0.0);
    CHECK(d.regular.holds);
    CHECK(d.augury.holds);
    CHECK(d.fortunate.holds);
    CHECK(d.agree);
    const auto* dfit = d.fitted.power_terms();
    REQUIRE(dfit != nullptr);
    CHECK(dfit->power == doctest::Approx(kCantorDim - 1.0).epsilon(0.05));

    // Supplying the exact symbolic witness switches the augury check onto the
    // exact exponent rule.
    EquivalenceReport e = regfort_equivalence_check(soft, Gauge::power_law(1.0, 1.2), 0.0,
                                                    Gauge::power_law(4.0 / 3.0, 0.5));
    CHECK(e.agree);
    CHECK(e.regular.holds);
    CHECK_FALSE(e.augury.heuristic);

    // Error paths: composed transforms and non-power-law gauges are rejected.
    PickFunction composed = PickFunction::mobius({1.0, 1.0, 1.0, 2.0}, pole);
    CHECK_THROWS_AS(regfort_equivalence_check(composed, Gauge::power_law(1.0, 0.5), 0.0),
                    UnsupportedFormError);
    CHECK_THROWS_AS(regfort_equivalence_check(soft, Gauge::tabulated({{0.5, 0.5}, {1.0, 1.0}}),
                                              0.0),
                    UnsupportedFormError);
    CHECK_THROWS_AS(regfort_equivalence_check(soft, Gauge::power_law(1.0, -0.2), 0.0),
                    PreconditionError);
}
