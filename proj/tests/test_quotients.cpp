#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nevlab/errors.hpp"
#include "nevlab/quotient.hpp"
#include "nevlab/sweep.hpp"

using namespace nevlab;

namespace {

constexpr double kPi = std::numbers::pi;

PickFunction linear_map() { return PickFunction::from_nevanlinna(0.0, 1.0, Measure::atomic({})); }

PickFunction origin_pole() {
    // a = b = 0 with a unit atom at 0 gives exactly z -> -1/z.
    return PickFunction::from_nevanlinna(0.0, 0.0, Measure::atomic({{0.0, 1.0}}));
}

PickFunction uniform_transform() {
    return PickFunction::from_nevanlinna(
        0.0, 0.0,
        Measure::from_components({Measure::PolynomialDensity{{{-1.0, 1.0, {1.0, 0, 0, 0}}}}}));
}

PickFunction sqrt_density_transform() {
    return PickFunction::from_nevanlinna(
        0.0, 0.0, Measure::from_components({Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}}));
}

} // namespace

TEST_CASE("pointwise quotient matches its definition") {
    PickFunction id = linear_map();
    CHECK(julia_fatou(id, Gauge::identity(), {0.7, 0.2}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(julia_fatou(id, Gauge::identity(), {-3.0, 1.5}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(julia_fatou(id, Gauge::constant(1.0), {0.4, 0.3}) ==
          doctest::Approx(0.3).epsilon(1e-14));

    PickFunction pole = origin_pole();
    double y = 0.5;
    CHECK(julia_fatou(pole, Gauge::identity(), {0.0, y}) ==
          doctest::Approx(1.0 / (y * y)).epsilon(1e-13));

    CHECK_THROWS_AS(julia_fatou(id, Gauge::identity(), {0.0, -1.0}), DomainError);
    Gauge dead = Gauge::pointwise([](double) { return 0.0; }, "0");
    CHECK_THROWS_AS(julia_fatou(id, dead, {0.0, 1.0}), DomainError);
}

TEST_CASE("direct averaged quotient reproduces closed forms") {
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();

    // Im f constant at the evaluation height.
    CHECK(averaged_quotient_direct(linear_map(), one, id, 0.0, 0.1) ==
          doctest::Approx(0.1).epsilon(1e-12));

    // Unit atom at the window center: (1/2eps) * 2 arctan(1) at height eps.
    CHECK(averaged_quotient_direct(origin_pole(), one, id, 0.0, 0.1) ==
          doctest::Approx(kPi / 0.4).epsilon(1e-9));

    // Whole-line Lebesgue: Im f is identically pi at every height.
    PickFunction line = PickFunction::from_nevanlinna(0.0, 0.0, Measure::lebesgue());
    CHECK(averaged_quotient_direct(line, one, id, 0.0, 0.25) ==
          doctest::Approx(kPi).epsilon(1e-12));
    CHECK(averaged_quotient_direct(line, one, id, 0.3, 0.01) ==
          doctest::Approx(kPi).epsilon(1e-12));

    CHECK_THROWS_AS(averaged_quotient_direct(linear_map(), one, id, 0.0, 1.5), ArgumentError);
}

TEST_CASE("kernel averaged quotient reproduces closed forms") {
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();

    for (double eps : {0.25, 0.1, 0.01, 1.0 / 1024.0})
        CHECK(averaged_quotient_kernel(origin_pole(), one, id, 0.0, eps) ==
              doctest::Approx(kPi / (4.0 * eps)).epsilon(1e-12));

    CHECK(averaged_quotient_kernel(linear_map(), one, id, 0.0, 0.1) ==
          doctest::Approx(0.1).epsilon(1e-14));

    // Composed forms have no explicit representation: kernel route refuses.
    PickFunction shifted = PickFunction::mobius({1.0, 1.0, 0.0, 1.0}, origin_pole());
    CHECK_THROWS_AS(averaged_quotient_kernel(shifted, one, id, 0.0, 0.1), UnsupportedFormError);
}

TEST_CASE("the two routes agree away from closed forms") {
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();
    Gauge sq = Gauge::power_law(1.0, 2.0);

    PickFunction uni = uniform_transform();
    double direct = averaged_quotient_direct(uni, one, sq, 0.0, 0.05);
    double kernel = averaged_quotient_kernel(uni, one, sq, 0.0, 0.05);
    CHECK(direct == doctest::Approx(kernel).epsilon(1e-8));

    PickFunction cantor = PickFunction::from_nevanlinna(0.0, 0.0, Measure::cantor());
    for (double eps : {0.125, 1.0 / 64.0}) {
        double d = averaged_quotient_direct(cantor, id, id, 0.3, eps);
        double k = averaged_quotient_kernel(cantor, id, id, 0.3, eps);
        CHECK(d == doctest::Approx(k).epsilon(1e-6));
    }

    // Mixed measure with a linear term and an off-window atom.
    Measure mixed = Measure::from_components(
        {Measure::Atoms{{{-0.4, 0.3}, {0.02, 0.1}}},
         Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}});
    PickFunction f = PickFunction::from_nevanlinna(0.5, 0.7, mixed);
    double d = averaged_quotient_direct(f, one, sq, 0.0, 1.0 / 16.0);
    double k = averaged_quotient_kernel(f, one, sq, 0.0, 1.0 / 16.0);
    CHECK(d == doctest::Approx(k).epsilon(1e-7));
}

TEST_CASE("scaling the normalizing gauge divides the quotient exactly") {
    Gauge one = Gauge::constant(1.0);
    Gauge five = Gauge::constant(5.0);
    Gauge id = Gauge::identity();
    PickFunction f = sqrt_density_transform();
    for (double eps : {0.1, 0.01}) {
        double base = averaged_quotient_kernel(f, one, id, 0.0, eps);
        double scaled = averaged_quotient_kernel(f, five, id, 0.0, eps);
        CHECK(scaled == doctest::Approx(base / 5.0).epsilon(1e-14));
    }
}

TEST_CASE("window bounds sandwich the quotient") {
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();

    // An atom dead-center saturates a center-angle lower constant.
    Measure atom = Measure::atomic({{0.0, 1.0}});
    AugurConstants tuned{std::atan(1.0), kPi, 1.0};
    AugurBounds at = augur_bounds(atom, 0.0, one, id, 0.0, 0.1, tuned);
    CHECK(at.lower == doctest::Approx(kPi / 0.4).epsilon(1e-13));
    CHECK(at.lower <= at.upper());

    // Zero measure, pure linear term: lower bound collapses to zero.
    Measure none = Measure::atomic({});
    AugurConstants fitted = fit_augur_constants(none, 1.0, id, 0.125);
    AugurBounds zb = augur_bounds(none, 1.0, one, id, 0.0, 0.05, fitted);
    CHECK(zb.lower == 0.0);
    double a = averaged_quotient_kernel(linear_map(), one, id, 0.0, 0.05);
    CHECK(a <= zb.upper() * (1.0 + 1e-12));

    // Fitted constants at the coarsest point hold down the whole grid.
    struct Scenario {
        PickFunction f;
        Gauge height;
    };
    std::vector<Scenario> scenarios;
    scenarios.push_back({uniform_transform(), Gauge::identity()});
    scenarios.push_back({sqrt_density_transform(), Gauge::power_law(1.0, 2.0)});
    scenarios.push_back({origin_pole(), Gauge::identity()});
    auto grid = dyadic_eps_grid(0.125, 12);
    for (const auto& sc : scenarios) {
        const auto* triple = sc.f.nevanlinna();
        REQUIRE(triple != nullptr);
        AugurConstants c = fit_augur_constants(triple->mu, triple->b, sc.height, grid.front());
        for (double eps : grid) {
            double value = averaged_quotient_kernel(sc.f, one, sc.height, 0.0, eps);
            AugurBounds b = augur_bounds(triple->mu, triple->b, one, sc.height, 0.0, eps, c);
            CHECK(b.lower <= value * (1.0 + 1e-9) + 1e-300);
            CHECK(value <= b.upper() * (1.0 + 1e-9));
        }
    }

    // Tail term scales as eps^{alpha(1 - beta) - 2} for power-law gauges.
    Gauge lam = Gauge::power_law(1.0, 1.5);
    Gauge kap = Gauge::power_law(1.0, 0.5);
    AugurConstants cs{0.1, kPi, 2.0};
    double t1 = augur_bounds(atom, 0.0, kap, lam, 0.0, 0.1, cs).upper_tail_term;
    double t2 = augur_bounds(atom, 0.0, kap, lam, 0.0, 0.05, cs).upper_tail_term;
    double expo = 1.5 * (1.0 - 0.5) - 2.0;
    CHECK(t2 / t1 == doctest::Approx(std::pow(0.5, expo)).epsilon(1e-12));

    // Hypothesis failures name the violated assumption.
    Gauge slow = Gauge::power_law(1.0, 0.5); // vanishes slower than t
    CHECK_THROWS_AS(augur_bounds(atom, 0.0, one, slow, 0.0, 0.1, tuned), PreconditionError);
    Gauge doubled = Gauge::power_law(2.0, 1.0); // O(t) but above t itself
    CHECK_THROWS_AS(augur_bounds(atom, 0.0, one, doubled, 0.0, 0.1, tuned), PreconditionError);
    CHECK_THROWS_AS(augur_bounds(atom, 0.0, one, id, 0.0, 0.1, AugurConstants{-1.0, 1.0, 1.0}),
                    ArgumentError);
}

TEST_CASE("tail boundedness estimates track the series trend") {
    auto grid = dyadic_eps_grid(0.125, 18);

    QuotientSeries decaying{0.0, Gauge::constant(1.0), Gauge::identity(), grid, {},
                            QuotientMethod::Kernel};
    for (double eps : grid) decaying.values.push_back(0.1 * eps);
    auto d = cc_lim_estimate(decaying);
    CHECK(d.bounded);
    CHECK(d.limsup < 1e-4);
    CHECK(d.trend == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.heuristic);

    QuotientSeries blowup = decaying;
    blowup.values.clear();
    for (double eps : grid) blowup.values.push_back(kPi / (4.0 * eps));
    auto u = cc_lim_estimate(blowup);
    CHECK(!u.bounded);
    CHECK(u.trend == doctest::Approx(-1.0).epsilon(1e-9));

    QuotientSeries flat = decaying;
    flat.values.assign(grid.size(), 3.0);
    auto c = cc_lim_estimate(flat);
    CHECK(c.bounded);
    CHECK(c.limsup == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(c.trend == doctest::Approx(0.0).epsilon(1e-12));

    QuotientSeries sentinel = decaying;
    sentinel.values.back() = kDivergent;
    auto s = cc_lim_estimate(sentinel);
    CHECK(!s.bounded);
    CHECK(is_divergent(s.limsup));

    QuotientSeries tiny{0.0, Gauge::constant(1.0), Gauge::identity(),
                        dyadic_eps_grid(0.125, 4),  std::vector<double>(4, 1.0),
                        QuotientMethod::Kernel};
    CHECK_THROWS_AS(cc_lim_estimate(tiny), ArgumentError);
}

TEST_CASE("parallel and serial series builders agree bit for bit") {
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();
    auto grid = dyadic_eps_grid(0.125, 10);

    PickFunction cantor = PickFunction::from_nevanlinna(0.0, 0.0, Measure::cantor());
    auto par = build_series(cantor, one, id, 0.0, grid, QuotientMethod::Kernel, 1e-9, 4);
    auto ser = build_series_serial(cantor, one, id, 0.0, grid, QuotientMethod::Kernel);
    REQUIRE(par.values.size() == ser.values.size());
    for (std::size_t i = 0; i < par.values.size(); ++i) CHECK(par.values[i] == ser.values[i]);

    PickFunction pole = origin_pole();
    auto pd = build_series(pole, one, id, 0.0, grid, QuotientMethod::Direct, 1e-9, 3);
    auto sd = build_series_serial(pole, one, id, 0.0, grid, QuotientMethod::Direct);
    for (std::size_t i = 0; i < pd.values.size(); ++i) {
        CHECK(pd.values[i] == sd.values[i]);
        CHECK(pd.values[i] == doctest::Approx(kPi / (4.0 * grid[i])).epsilon(1e-8));
    }

    std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(build_series(pole, one, id, 0.0, bad, QuotientMethod::Kernel), ArgumentError);
}
