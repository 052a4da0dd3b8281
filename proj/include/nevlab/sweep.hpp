#pragma once

#include <span>

#include "nevlab/quotient.hpp"

namespace nevlab {

// Parallel sweep kernels and their single-threaded reference twins. Each grid
// point is a pure computation writing its own output slot, so the parallel
// and serial variants produce identical numbers (same operations, same
// order within each point). Points that fail their accuracy target carry the
// kDivergent sentinel.

/// Averaged-quotient series over a strictly decreasing eps grid, parallel
/// over grid points. jobs = 0 defers to set_jobs / NEVLAB_JOBS / hardware.
QuotientSeries build_series(const PickFunction& f, const Gauge& scale, const Gauge& height,
                            double tau, std::span<const double> grid, QuotientMethod method,
                            double rel_tol = 1e-9, int jobs = 0);

QuotientSeries build_series_serial(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                   double tau, std::span<const double> grid,
                                   QuotientMethod method, double rel_tol = 1e-9);

} // namespace nevlab
