#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/pick.hpp"

using namespace nevlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("representation evaluation matches closed forms") {
    // a + b z - 1/z for the unit atom at the origin
    PickFunction f = PickFunction::from_nevanlinna(1.0, 2.0, Measure::atomic({{0.0, 1.0}}));
    cdouble v = f(cdouble(0.0, 1.0));
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(3.0).epsilon(1e-14));

    // the full-line density evaluates to a constant imaginary part
    PickFunction leb = PickFunction::from_nevanlinna(0.5, 0.0, Measure::lebesgue());
    for (cdouble z : {cdouble(0.0, 1e-6), cdouble(4.0, 2.0)}) {
        cdouble w = leb(z);
        CHECK(w.real() == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(w.imag() == doctest::Approx(kPi).epsilon(1e-13));
    }

    CHECK_THROWS_AS(f(cdouble(0.0, -1.0)), DomainError);
    CHECK_THROWS_AS(PickFunction::from_nevanlinna(0.0, -1.0, Measure::lebesgue()),
                    ArgumentError);
}

TEST_CASE("matrix resolvents evaluate by linear solves") {
    // [[1,1],[1,0]] against the first basis vector: explicit spectral form
    Eigen::MatrixXd A(2, 2);
    A << 1.0, 1.0, 1.0, 0.0;
    Eigen::VectorXd phi(2);
    phi << 1.0, 0.0;
    PickFunction f = PickFunction::from_resolvent(A, phi);

    double lp = (1.0 + std::sqrt(5.0)) / 2.0, lm = (1.0 - std::sqrt(5.0)) / 2.0;
    double mp = (5.0 + std::sqrt(5.0)) / 10.0, mm = (5.0 - std::sqrt(5.0)) / 10.0;
    for (cdouble z : {cdouble(0.3, 0.7), cdouble(-2.0, 0.05)}) {
        cdouble expect = mp / (lp - z) + mm / (lm - z);
        cdouble got = f(z);
        CHECK(std::abs(got - expect) <= 1e-13 * std::abs(expect));
    }

    Eigen::MatrixXd bad(2, 2);
    bad << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(PickFunction::from_resolvent(bad, phi), ArgumentError);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(PickFunction::from_resolvent(A, zero), ArgumentError);
}

TEST_CASE("fractional transforms preserve the half plane and validate input") {
    PickFunction base = PickFunction::from_nevanlinna(0.0, 1.0, Measure::atomic({{0.0, 1.0}}));
    PickFunction m = PickFunction::mobius({2.0, 1.0, 1.0, 3.0}, base);
    cdouble z(0.4, 1.3);
    cdouble w = PickFunction::from_nevanlinna(0.0, 1.0, Measure::atomic({{0.0, 1.0}}))(z);
    CHECK(std::abs(m(z) - (2.0 * w + 1.0) / (w + 3.0)) <= 1e-14);
    CHECK(m(z).imag() > 0.0);

    CHECK_THROWS_AS(PickFunction::mobius({1.0, 2.0, 1.0, 2.0}, std::move(base)), ArgumentError);
}

TEST_CASE("double negative reciprocal collapses structurally") {
    PickFunction f = PickFunction::from_nevanlinna(0.3, 0.7, Measure::atomic({{1.0, 2.0}}));
    PickFunction once = PickFunction::negative_reciprocal(f);
    PickFunction twice = PickFunction::negative_reciprocal(std::move(once));
    CHECK(twice.describe() == f.describe());
    cdouble z(0.2, 0.9);
    CHECK(std::abs(twice(z) - f(z)) <= 1e-15 * std::abs(f(z)));

    PickFunction again = PickFunction::negative_reciprocal(f);
    CHECK(std::abs(again(z) + 1.0 / f(z)) <= 1e-15);
}

TEST_CASE("rank-one updates produce the spectral measure of the coupled matrix") {
    Eigen::MatrixXd A(2, 2);
    A << 1.0, 1.0, 1.0, 0.0;
    Eigen::VectorXd phi(2);
    phi << 1.0, 0.0;

    // golden-ratio eigenvalues with squared-projection masses
    Measure mu = rank_one_update_measure(A, phi, 0.0);
    double lp = (1.0 + std::sqrt(5.0)) / 2.0, lm = (1.0 - std::sqrt(5.0)) / 2.0;
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.point_mass(lp) == doctest::Approx((5.0 + std::sqrt(5.0)) / 10.0).epsilon(1e-12));
    CHECK(mu.point_mass(lm) == doctest::Approx((5.0 - std::sqrt(5.0)) / 10.0).epsilon(1e-12));
}

TEST_CASE("coupling transform equals the resolvent of the updated matrix") {
    std::vector<double> diag(6, 0.0), off(5, 0.5);
    Eigen::MatrixXd A = jacobi_matrix(diag, off);
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(6);
    phi[0] = 1.0;
    PickFunction f = PickFunction::from_resolvent(A, phi);

    for (double alpha : {-1.0, 0.3, 2.0}) {
        PickFunction fa = aronszajn_krein(f, alpha);

        // independent route: spectral measure of A + alpha phi phi^T
        Measure mu = rank_one_update_measure(A, phi, alpha);
        double shift = 0.0;
        for (const auto& c : mu.components())
            if (const auto* at = std::get_if<Measure::Atoms>(&c))
                for (auto [t, m] : at->points) shift += m * t / (1.0 + t * t);
        PickFunction g = PickFunction::from_nevanlinna(shift, 0.0, mu);

        for (cdouble z : {cdouble(0.1, 0.4), cdouble(-1.2, 1.5), cdouble(2.0, 0.02)}) {
            cdouble a = fa(z), b = g(z);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
            // and the defining identity itself
            cdouble w = f(z);
            CHECK(std::abs(a - w / (1.0 + alpha * w)) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("boundary window mass recovers atom weights as the height shrinks") {
    PickFunction f = PickFunction::from_nevanlinna(0.0, 0.0, Measure::atomic({{0.0, 1.0}}));
    double y = 1e-3;
    double expect = 1.0 - (2.0 / kPi) * std::atan(y); // (2/pi) atan(1/y)
    CHECK(boundary_window_mass(f, -1.0, 1.0, y) == doctest::Approx(expect).epsilon(1e-10));

    // resolvent route: total spectral mass of the unit vector is 1
    Eigen::MatrixXd A(3, 3);
    A.setZero();
    A(0, 1) = A(1, 0) = 0.5;
    A(1, 2) = A(2, 1) = 0.5;
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(3);
    phi[0] = 1.0;
    PickFunction r = PickFunction::from_resolvent(A, phi);
    CHECK(boundary_window_mass(r, -2.0, 2.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
}
