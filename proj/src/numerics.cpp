#include "nevlab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace nevlab {

std::vector<double> dyadic_grid(double eps0, int count) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(std::max(count, 0)));
    double e = eps0;
    for (int k = 0; k < count; ++k) {
        g.push_back(e);
        e *= 0.5;
    }
    return g;
}

std::vector<double> power_grid(double base, int k_lo, int k_hi) {
    std::vector<double> g;
    for (int k = k_lo; k <= k_hi; ++k) g.push_back(std::pow(base, -k));
    return g;
}

double linear_slope(std::span<const double> x, std::span<const double> y) {
    std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && !is_divergent(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    return linear_slope(lx, ly);
}

uint64_t splitmix64(uint64_t state) {
    uint64_t z = state + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {
double unit_from_bits(uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}
double frac(double v) { return v - std::floor(v); }
// plastic constant and its square root reciprocals (R2 sequence)
constexpr double kR2a1 = 0.7548776662466927;
constexpr double kR2a2 = 0.5698402909980532;
constexpr double kGolden = 0.6180339887498949;
} // namespace

QuasiRandom2D::QuasiRandom2D(uint64_t seed)
    : off1_(unit_from_bits(splitmix64(seed))),
      off2_(unit_from_bits(splitmix64(seed ^ 0xa5a5a5a5a5a5a5a5ull))) {}

std::pair<double, double> QuasiRandom2D::point(std::size_t i) const {
    double n = static_cast<double>(i + 1);
    return {frac(off1_ + kR2a1 * n), frac(off2_ + kR2a2 * n)};
}

QuasiRandom1D::QuasiRandom1D(uint64_t seed) : off_(unit_from_bits(splitmix64(seed ^ 0x5bd1e995ull))) {}

double QuasiRandom1D::point(std::size_t i) const {
    return frac(off_ + kGolden * static_cast<double>(i + 1));
}

double im_pole_power_bound(double u_min_abs, double lam, double dist, int m) {
    double mod = std::pow(dist, -m);
    if (u_min_abs <= lam * static_cast<double>(m)) return mod;
    return mod * std::min(1.0, static_cast<double>(m) * lam / u_min_abs);
}

BlockSumResult sum_dyadic_blocks(std::span<const double> increments, double cap) {
    BlockSumResult r;
    r.cap = cap;
    double sum = 0.0;
    for (double b : increments) {
        if (is_divergent(b)) {
            r.divergent = true;
            r.value = kDivergent;
            return r;
        }
        sum += b;
        if (sum > cap) {
            r.divergent = true;
            r.value = kDivergent;
            return r;
        }
    }
    // trend of the tail increments decides convergence of the untruncated series
    std::vector<double> idx, val;
    std::size_t n = increments.size();
    for (std::size_t i = n / 2; i < n; ++i) {
        if (increments[i] > 0.0) {
            idx.push_back(static_cast<double>(i));
            val.push_back(std::log(increments[i]));
        }
    }
    if (val.size() >= 3) {
        double slope = linear_slope(idx, val); // log-increment change per block
        double rho = std::exp(slope);
        if (rho >= 0.97) {
            r.divergent = true;
            r.value = kDivergent;
            return r;
        }
        // geometric tail estimate from the last nonzero increment
        double last = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            if (increments[i] > 0.0) {
                last = increments[i];
                break;
            }
        }
        sum += last * rho / (1.0 - rho);
    }
    r.value = sum;
    return r;
}

} // namespace nevlab
