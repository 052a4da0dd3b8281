#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nevlab/measure.hpp"
#include "nevlab/numerics.hpp"

namespace nevlab {

// ------------------------------------------------------------------ //
// PickFunction: holomorphic self-maps of the upper half plane, in one
// of four explicit representations
// ------------------------------------------------------------------ //

class PickFunction {
public:
    /// f(z) = a + b z + integral (1/(t - z) - t/(1 + t^2)) dmu(t), b >= 0.
    struct Nevanlinna {
        double a = 0.0;
        double b = 0.0;
        Measure mu;
    };

    /// f(z) = phi^T (A - z)^-1 phi for a real symmetric A, evaluated by
    /// complex LU solves (no spectral decomposition involved).
    struct Resolvent {
        Eigen::MatrixXd matrix;
        Eigen::VectorXd phi;
    };

    /// f(z) = (m0 g(z) + m1) / (m2 g(z) + m3), with m real and
    /// m0 m3 - m1 m2 > 0 so the upper half plane is preserved.
    struct Mobius {
        std::array<double, 4> m;
        std::shared_ptr<const PickFunction> inner;
    };

    /// f(z) = -1 / g(z).
    struct NegativeReciprocal {
        std::shared_ptr<const PickFunction> inner;
    };

    static PickFunction from_nevanlinna(double a, double b, Measure mu);
    static PickFunction from_resolvent(Eigen::MatrixXd matrix, Eigen::VectorXd phi);
    static PickFunction mobius(const std::array<double, 4>& m, PickFunction inner);
    /// Collapses a double application back to the inner function.
    static PickFunction negative_reciprocal(PickFunction inner);

    cdouble operator()(cdouble z) const; ///< requires Im z > 0

    const Nevanlinna* nevanlinna() const { return std::get_if<Nevanlinna>(&form_); }
    const Resolvent* resolvent() const { return std::get_if<Resolvent>(&form_); }

    std::string describe() const;

private:
    std::variant<Nevanlinna, Resolvent, Mobius, NegativeReciprocal> form_;
    explicit PickFunction(std::variant<Nevanlinna, Resolvent, Mobius, NegativeReciprocal> f)
        : form_(std::move(f)) {}
    void check_upper_half_map() const;
};

// ------------------------------------------------------------------ //
// spectral helpers
// ------------------------------------------------------------------ //

/// Dense symmetric tridiagonal matrix from diagonal and off-diagonal entries.
Eigen::MatrixXd jacobi_matrix(const std::vector<double>& diag,
                              const std::vector<double>& offdiag);

/// f_alpha = f / (1 + alpha f): the resolvent function of the rank-one
/// update A + alpha phi phi^T when f is the resolvent function of (A, phi).
PickFunction aronszajn_krein(PickFunction f, double alpha);

/// Spectral measure of (A + alpha phi phi^T, phi) as an atomic measure:
/// masses are squared eigenvector projections; eigenvalues closer than
/// 1e-12 * spread merge, masses below 1e-14 * total drop.
Measure rank_one_update_measure(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& phi,
                                double alpha);

/// (1/pi) * integral over [lo, hi] of Im f(x + i y) dx: the sliding-height
/// window mass whose y -> 0 limit recovers mu((lo, hi)) plus half of any
/// boundary atoms.
double boundary_window_mass(const PickFunction& f, double lo, double hi, double y);

} // namespace nevlab
