#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace nevlab {

using cdouble = std::complex<double>;

// ------------------------------------------------------------------ //
// divergence sentinels: diverging integrals and series entries are
// reported as values, not exceptions
// ------------------------------------------------------------------ //

inline constexpr double kDivergent = std::numeric_limits<double>::max();

inline bool is_divergent(double v) {
    return !(v == v) || v >= 1e300 || v <= -1e300;
}

// ------------------------------------------------------------------ //
// grids
// ------------------------------------------------------------------ //

/// { eps0 * 2^-k : k = 0..count-1 }, decreasing.
std::vector<double> dyadic_grid(double eps0, int count);

/// { base^-k : k = k_lo..k_hi }, decreasing.
std::vector<double> power_grid(double base, int k_lo, int k_hi);

// ------------------------------------------------------------------ //
// trend fits
// ------------------------------------------------------------------ //

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 or
/// sentinel entries are skipped. Returns 0 when fewer than 2 usable points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Plain least-squares slope of y against x.
double linear_slope(std::span<const double> x, std::span<const double> y);

// ------------------------------------------------------------------ //
// deterministic low-discrepancy sequences
// ------------------------------------------------------------------ //

uint64_t splitmix64(uint64_t state);

/// Additive recurrence net on [0,1)^2 (plastic-constant R2 sequence),
/// deterministically offset by the seed.
class QuasiRandom2D {
public:
    explicit QuasiRandom2D(uint64_t seed = 0);
    /// i-th point, independent of call order.
    std::pair<double, double> point(std::size_t i) const;

private:
    double off1_, off2_;
};

/// Golden-ratio 1D net on [0,1).
class QuasiRandom1D {
public:
    explicit QuasiRandom1D(uint64_t seed = 0);
    double point(std::size_t i) const;

private:
    double off_;
};

// ------------------------------------------------------------------ //
// pole stacks: value and derivatives of t -> (t - z)^-1
//
// Every kernel integrated against a measure in this library is a real
// or complex combination of simple poles, so derivative bounds for the
// self-similar cell rule come from these.
// ------------------------------------------------------------------ //

/// powers[n] = (t - z)^-(n+1) for n = 0..N-1.
template <int N>
inline void inverse_powers(cdouble t_minus_z, cdouble (&powers)[N]) {
    cdouble inv = 1.0 / t_minus_z;
    powers[0] = inv;
    for (int n = 1; n < N; ++n) powers[n] = powers[n - 1] * inv;
}

/// Upper bound for |Im w^-m| with w = u - i*lam, |w| >= dist, |arg from axis| ~ lam:
/// |Im w^-m| <= |w|^-m * min(1, m * lam / |u|). Sharp in the far field; used to
/// keep remainder bounds from collapsing to the crude modulus bound.
double im_pole_power_bound(double u_min_abs, double lam, double dist, int m);

// ------------------------------------------------------------------ //
// dyadic-block series summation with divergence detection
// ------------------------------------------------------------------ //

struct BlockSumResult {
    double value = 0.0;       ///< partial sum (plus tail extrapolation when convergent)
    bool divergent = false;   ///< truncated partial sums exceeded the cap or increments grow
    double cap = 1e12;
    std::string_view why() const { return divergent ? "partial sums diverge" : ""; }
};

/// Sums block contributions b_k (k = k_lo..k_hi, blocks ordered toward the
/// singularity). Convergence is decided from the fitted trend of log b_k:
/// decaying increments get a geometric tail estimate, growing or flat
/// increments with partial sums over the cap are flagged divergent.
BlockSumResult sum_dyadic_blocks(std::span<const double> increments, double cap = 1e12);

} // namespace nevlab
