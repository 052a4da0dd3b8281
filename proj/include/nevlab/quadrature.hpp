#pragma once

#include <complex>
#include <functional>
#include <span>

#include "nevlab/numerics.hpp"

namespace nevlab {

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_panels = 200000;
    /// refinement stops on panels whose estimate is below this fraction of the
    /// running total: guards against chasing integrand evaluation noise
    double noise_floor = 1e-14;
    bool throw_on_failure = true; ///< NumericError with partial value when panels run out
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
    int panels = 0;
};

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]; worst panel is bisected
/// first. `presplit` lists interior points that seed the initial panels
/// (kinks, window edges, near-singular centers).
QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt = {}, std::span<const double> presplit = {});

QuadResult<cdouble> integrate_complex(const std::function<cdouble(double)>& f, double a, double b,
                                      const QuadOptions& opt = {}, std::span<const double> presplit = {});

} // namespace nevlab
