#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/gauge.hpp"

using namespace nevlab;

TEST_CASE("power-law gauges evaluate and validate") {
    Gauge g = Gauge::power_law(2.0, 0.5);
    CHECK(g(0.25) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(g(0.0), DomainError);
    CHECK_THROWS_AS(Gauge::power_law(0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(Gauge::power_law(-1.0, 1.0), ArgumentError);

    Gauge withlog = Gauge::power_law(1.0, 1.0, 2.0);
    double t = 0.1;
    CHECK(withlog(t) == doctest::Approx(t * std::pow(std::log(1.0 / t), 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(withlog(1.5), DomainError);
}

TEST_CASE("pure power laws compose symbolically") {
    // sqrt of (2t) is sqrt(2) * t^(1/2)
    Gauge outer = Gauge::power_law(1.0, 0.5);
    Gauge inner = Gauge::power_law(2.0, 1.0);
    Gauge c = compose(outer, inner);
    REQUIRE(c.is_pure_power_law());
    CHECK(c.power_terms()->coeff == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.power_terms()->power == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c(0.3) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));

    Gauge p = multiply(Gauge::power_law(3.0, 1.5), Gauge::power_law(2.0, -0.5, 1.0));
    REQUIRE(p.is_power_law());
    CHECK(p.power_terms()->coeff == doctest::Approx(6.0));
    CHECK(p.power_terms()->power == doctest::Approx(1.0));
    CHECK(p.power_terms()->logpower == doctest::Approx(1.0));

    Gauge q = divide(Gauge::power_law(6.0, 2.0), Gauge::power_law(2.0, 1.0));
    CHECK(symbolically_equal(q, Gauge::power_law(3.0, 1.0)));
}

TEST_CASE("tabulated gauges interpolate and extrapolate by local power law") {
    // exact samples of t^(1/2): head extrapolation reproduces the power law
    std::vector<std::pair<double, double>> samples;
    for (int k = 10; k >= 1; --k) {
        double t = std::ldexp(1.0, -k);
        samples.emplace_back(t, std::sqrt(t));
    }
    Gauge g = Gauge::tabulated(samples);
    CHECK(g(std::ldexp(1.0, -20)) == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-12));
    // linear interpolation between nodes
    double mid = 0.375; // between 1/4 and 1/2
    double expect = 0.5 * (std::sqrt(0.25) + std::sqrt(0.5));
    CHECK(g(mid) == doctest::Approx(expect).epsilon(1e-12));
    // above the last node the value is held
    CHECK(g(0.9) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(Gauge::tabulated({{0.5, 1.0}}), ArgumentError);
    CHECK_THROWS_AS(Gauge::tabulated({{0.5, 1.0}, {0.25, 2.0}}), ArgumentError);
    CHECK_THROWS_AS(Gauge::tabulated({{0.25, 1.0}, {0.5, -1.0}}), ArgumentError);
    // non-monotone values are rejected
    CHECK_THROWS_AS(Gauge::tabulated({{0.1, 1.0}, {0.2, 3.0}, {0.3, 2.0}}), ArgumentError);
}

TEST_CASE("asymptotic comparison of symbolic gauges is exact") {
    auto cls = [](const Gauge& g, const Gauge& h) { return asymptotic_class(g, h); };
    Gauge id = Gauge::identity();

    auto v = cls(Gauge::power_law(1.0, 2.0), id);
    CHECK(v.cls == AsymptoticClass::LittleO);
    CHECK_FALSE(v.heuristic);

    CHECK(cls(id, Gauge::power_law(1.0, 2.0)).cls == AsymptoticClass::LittleOmega);
    CHECK(cls(Gauge::power_law(3.0, 1.0), id).cls == AsymptoticClass::Theta);

    // equal powers: the log factor decides
    CHECK(cls(Gauge::power_law(1.0, 1.0, 1.0), id).cls == AsymptoticClass::LittleOmega);
    CHECK(cls(Gauge::power_law(1.0, 1.0, -1.0), id).cls == AsymptoticClass::LittleO);

    CHECK(implies_O(AsymptoticClass::LittleO));
    CHECK(implies_O(AsymptoticClass::Theta));
    CHECK_FALSE(implies_O(AsymptoticClass::LittleOmega));
    CHECK(implies_Omega(AsymptoticClass::Theta));
    CHECK(implies_Omega(AsymptoticClass::BigOmega));
}

TEST_CASE("asymptotic comparison of tabulated gauges fits the trend") {
    std::vector<std::pair<double, double>> samples;
    for (int k = 20; k >= 1; --k) {
        double t = std::ldexp(1.0, -k);
        samples.emplace_back(t, std::sqrt(t));
    }
    Gauge tab = Gauge::tabulated(samples);

    auto v = asymptotic_class(tab, Gauge::power_law(1.0, 0.3));
    CHECK(v.cls == AsymptoticClass::LittleO);
    CHECK(v.heuristic);

    CHECK(asymptotic_class(tab, Gauge::power_law(1.0, 0.7)).cls == AsymptoticClass::LittleOmega);
    CHECK(asymptotic_class(tab, Gauge::power_law(2.0, 0.5)).cls == AsymptoticClass::Theta);
}

TEST_CASE("integrability certificates for symbolic pairs are exact") {
    // F = t^s against gamma = t^eta: the integral converges iff s - eta > -1,
    // with the log(1/t) refinement on the boundary
    auto cert = is_augury(Gauge::power_law(1.0, 0.5), Gauge::identity());
    CHECK(cert.holds);
    CHECK_FALSE(cert.heuristic);

    CHECK_FALSE(is_augury(Gauge::power_law(1.0, -0.5), Gauge::power_law(1.0, 1.2)).holds);
    CHECK_FALSE(is_augury(Gauge::constant(1.0), Gauge::identity()).holds); // boundary x = -1

    // boundary exponent with a strong enough log factor converges
    CHECK(is_augury(Gauge::power_law(1.0, 0.0, -2.0), Gauge::identity()).holds);
    CHECK_FALSE(is_augury(Gauge::power_law(1.0, 0.0, -1.0), Gauge::identity()).holds);

    // the scale C never changes the verdict
    for (double C : {0.5, 1.0, 2.0, 4.0}) {
        CHECK(is_augury(Gauge::power_law(1.0, 0.5), Gauge::identity(), C).holds);
        CHECK_FALSE(is_augury(Gauge::power_law(1.0, -1.5), Gauge::identity(), C).holds);
    }

    CHECK_THROWS_AS(is_augury(Gauge::identity(), Gauge::power_law(1.0, -1.0)),
                    PreconditionError);
    CHECK_THROWS_AS(is_augury(Gauge::identity(), Gauge::identity(), 0.0), ArgumentError);
}

TEST_CASE("integrability probe for tabulated inputs matches the symbolic verdict") {
    auto make_tab = [](double power) {
        std::vector<std::pair<double, double>> samples;
        for (int k = 24; k >= 1; --k) {
            double t = std::ldexp(1.0, -k);
            samples.emplace_back(t, std::pow(t, power));
        }
        return Gauge::tabulated(samples);
    };

    auto hold = is_augury(make_tab(0.5), Gauge::identity());
    CHECK(hold.holds);
    CHECK(hold.heuristic);

    auto fail = is_augury(make_tab(-0.5), Gauge::power_law(1.0, 1.2));
    CHECK_FALSE(fail.holds);
    CHECK(fail.heuristic);

    for (double C : {0.5, 2.0, 4.0})
        CHECK(is_augury(make_tab(0.5), Gauge::identity(), C).holds);
}

TEST_CASE("fortune decomposition resolves the minimum symbolically") {
    auto roundtrip = [](const Gauge& F) {
        auto d = decompose_fortune(F);
        // the quotient gauge composed with the approach gauge recovers F
        CHECK(symbolically_equal(compose(d.k, d.lambda), F, 1e-12));
        // the approach gauge never exceeds the cone opening
        CHECK(implies_O(asymptotic_class(d.lambda, Gauge::identity()).cls));
        double t = 1.0 / 64.0;
        CHECK(d.k(d.lambda(t)) == doctest::Approx(F(t)).epsilon(1e-12));
        return d;
    };

    auto flat = roundtrip(Gauge::constant(1.0));
    CHECK(symbolically_equal(flat.lambda, Gauge::power_law(1.0, 2.0)));
    CHECK(symbolically_equal(flat.k, Gauge::constant(1.0)));

    auto rising = roundtrip(Gauge::identity());
    CHECK(symbolically_equal(rising.lambda, Gauge::power_law(1.0, 3.0)));
    CHECK(symbolically_equal(rising.k, Gauge::power_law(1.0, 1.0 / 3.0)));

    auto sinking = roundtrip(Gauge::power_law(1.0, -0.5));
    CHECK(symbolically_equal(sinking.lambda, Gauge::power_law(1.0, 1.5)));
    CHECK(symbolically_equal(sinking.k, Gauge::power_law(1.0, -1.0 / 3.0)));

    auto scaled = roundtrip(Gauge::power_law(4.0, 2.0));
    CHECK(symbolically_equal(scaled.lambda, Gauge::power_law(4.0, 4.0)));
    CHECK(symbolically_equal(scaled.k, Gauge::power_law(2.0, 0.5)));

    // boundary exponent: the minimum saturates at the identity scale
    auto edge = roundtrip(Gauge::power_law(3.0, -1.0));
    CHECK(symbolically_equal(edge.lambda, Gauge::identity()));
    auto below = roundtrip(Gauge::power_law(1.0, -1.5));
    CHECK(symbolically_equal(below.lambda, Gauge::identity()));
    CHECK(symbolically_equal(below.k, Gauge::power_law(1.0, -1.5)));

    CHECK_THROWS_AS(decompose_fortune(Gauge::power_law(1.0, 1.0, 1.0)), UnsupportedFormError);
}

TEST_CASE("monotone direction covers all gauge forms") {
    CHECK(Gauge::identity().monotone_direction() == +1);
    CHECK(Gauge::power_law(1.0, -1.0).monotone_direction() == -1);
    CHECK(Gauge::power_law(1.0, 0.0, -1.0).monotone_direction() == +1);
    CHECK(Gauge::constant(2.0).monotone_direction() == +1);
    Gauge tab = Gauge::tabulated({{0.25, 2.0}, {0.5, 1.0}});
    CHECK(tab.monotone_direction() == -1);
}
