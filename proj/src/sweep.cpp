#include "nevlab/sweep.hpp"

#include <exception>

#include "nevlab/errors.hpp"
#include "nevlab/parallel.hpp"

namespace nevlab {

namespace {

void validate_grid(std::span<const double> grid) {
    if (grid.empty()) throw ArgumentError("eps grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw ArgumentError("eps grid must be positive");
        if (i > 0 && !(grid[i] < grid[i - 1]))
            throw ArgumentError("eps grid must be strictly decreasing");
    }
}

double series_point(const PickFunction& f, const Gauge& scale, const Gauge& height, double tau,
                    double eps, QuotientMethod method, double rel_tol) {
    try {
        return averaged_quotient(f, scale, height, tau, eps, method, rel_tol);
    } catch (const NumericError&) {
        return kDivergent; // accuracy target missed: sentinel, not a guess
    }
}

QuotientSeries empty_series(const Gauge& scale, const Gauge& height, double tau,
                            std::span<const double> grid, QuotientMethod method) {
    return {tau,
            scale,
            height,
            {grid.begin(), grid.end()},
            std::vector<double>(grid.size()),
            method};
}

} // namespace

QuotientSeries build_series_serial(const PickFunction& f, const Gauge& scale, const Gauge& height,
                                   double tau, std::span<const double> grid,
                                   QuotientMethod method, double rel_tol) {
    validate_grid(grid);
    QuotientSeries out = empty_series(scale, height, tau, grid, method);
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.values[i] = series_point(f, scale, height, tau, grid[i], method, rel_tol);
    return out;
}

QuotientSeries build_series(const PickFunction& f, const Gauge& scale, const Gauge& height,
                            double tau, std::span<const double> grid, QuotientMethod method,
                            double rel_tol, int jobs) {
    validate_grid(grid);
    QuotientSeries out = empty_series(scale, height, tau, grid, method);
    const long n = static_cast<long>(grid.size());
    [[maybe_unused]] const int workers = resolve_jobs(jobs);
#if defined(_OPENMP)
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long i = 0; i < n; ++i) {
        try {
            out.values[static_cast<std::size_t>(i)] =
                series_point(f, scale, height, tau, grid[static_cast<std::size_t>(i)], method,
                             rel_tol);
        } catch (...) {
#pragma omp critical(nevlab_sweep_error)
            if (!first_error) first_error = std::current_exception();
            out.values[static_cast<std::size_t>(i)] = kDivergent;
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    for (long i = 0; i < n; ++i)
        out.values[static_cast<std::size_t>(i)] = series_point(
            f, scale, height, tau, grid[static_cast<std::size_t>(i)], method, rel_tol);
#endif
    return out;
}

} // namespace nevlab
