#pragma once

// Internal: moment data and cell-recursion integration for self-similar
// measure components. Not installed; used by measure.cpp and tests.

#include <functional>

#include "nevlab/measure.hpp"
#include "nevlab/numerics.hpp"

namespace nevlab::detail {

struct SelfSimStats {
    double mean = 0.0;
    double c2 = 0.0, c3 = 0.0, c4 = 0.0; ///< central moments of the unit-mass law
    double hull_lo = 0.0, hull_hi = 0.0;
};

SelfSimStats selfsim_stats(const Measure::SelfSimilar& c);

/// Kernel interface for the fourth-order moment rule: the estimate on a cell
/// of mass m, centroid mu, scale s is
///   m * (K(mu) + s^2 c2 / 2 * K''(mu) + s^3 c3 / 6 * K'''(mu))
/// with rigorous remainder m * s^4 c4 / 24 * sup |K''''| over the cell hull.
struct CellKernel {
    std::function<cdouble(double)> value;
    std::function<cdouble(double)> d2;
    std::function<cdouble(double)> d3;
    std::function<double(double, double)> bound4; ///< sup |K''''| on [lo, hi]
};

struct CellIntegral {
    cdouble value{0.0, 0.0};
    double error = 0.0; ///< accumulated remainder bound
};

CellIntegral selfsim_integrate(const Measure::SelfSimilar& c, const CellKernel& k,
                               double rtol = 1e-10);

/// mu([lo, hi]) within absolute tolerance tol (the component is non-atomic,
/// so open and closed windows agree).
double selfsim_window_mass(const Measure::SelfSimilar& c, double lo, double hi, double tol);

/// Poisson integral of the component at x + iy through a per-(measure, y)
/// cached cell tree.  The cell geometry is independent of x, so a window
/// quadrature hitting the same component at one height reuses the refined
/// tree across all of its abscissas instead of rebuilding it per point.
/// Results are a deterministic function of (component, x, y, rtol) alone:
/// the walk's accept/descend decisions never consult cache state.
double selfsim_poisson_cached(std::uint64_t host_id, std::size_t comp_index,
                              const Measure::SelfSimilar& c, double x, double y,
                              double rtol = 1e-10);

} // namespace nevlab::detail
