#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nevlab/gauge.hpp"
#include "nevlab/pick.hpp"
#include "nevlab/quotient.hpp"

namespace nevlab {

// ------------------------------------------------------------------ //
// Stolz geometry: nontangential and gauge-shaped approach regions
// ------------------------------------------------------------------ //

/// Approach region at a boundary point. Classical: the cone
/// Im z >= aperture * |z - tau|. Gauge-shaped: the union over widths
/// c in (0, C] of the boxes { |Re z - tau| <= c, Im z >= lambda(c) }.
struct StolzSpec {
    enum class Kind { Classical, Shaped };

    Kind kind = Kind::Classical;
    double aperture = 1.0;                ///< classical: M in (0, 1]
    Gauge lambda = Gauge::identity();     ///< shaped: height floor gauge
    double width = 1.0;                   ///< shaped: maximal half-width C

    static StolzSpec classical(double aperture);
    static StolzSpec shaped(Gauge lambda, double width);
};

/// Is z inside the approach region at tau? The shaped test resolves the
/// existential width by monotone bisection on lambda, so lambda must be
/// monotone on (0, 1) (PreconditionError otherwise). Im z must be positive.
bool stolz_membership(cdouble z, double tau, const StolzSpec& spec);

// ------------------------------------------------------------------ //
// spectral classification along the vertical ray
// ------------------------------------------------------------------ //

enum class SpectralClass { Ethereal, Julia, TrueAC, Crypto };
const char* to_string(SpectralClass c);

/// Boundary verdict at one point, from samples f(tau + iy) on the dyadic
/// ray y = 2^-k, k = 0..27. Heuristic by construction: the ray is a
/// one-dimensional surrogate for the full approach region, and limit
/// existence is judged from finitely many samples.
struct SpectralVerdict {
    double tau = 0.0;
    SpectralClass cls = SpectralClass::Ethereal;
    std::optional<cdouble> nt_limit_estimate;  ///< set when the ray values converge
    std::vector<double> ray_heights;           ///< the dyadic y-grid, descending
    std::vector<double> julia_quotient_trace;  ///< Im f(tau+iy) / y along the ray
    std::string diagnostics;
    bool heuristic = true;
};

/// Tail range must exceed this multiple of the tail increment scale before
/// the diagnostics call an inconclusive ray an outright oscillation.
inline constexpr double kOscillationRangeFactor = 10.0;

/// Decision tree, every case landing in exactly one class:
///   y|f| stable at a positive constant            -> Julia (pole)
///   values converge, Im-limit positive            -> TrueAC
///   values converge, quotient trace bounded       -> Julia (B-point)
///   values converge, real limit, unbounded trace  -> Crypto
///   values grow without bound (no pole)           -> Crypto
///   anything else (oscillation / no stable trend) -> Ethereal
SpectralVerdict classify_point(const PickFunction& f, double tau);

/// classify_point over many boundary points; OpenMP-parallel with `jobs`
/// workers (0 = NEVLAB_JOBS or hardware). Output is identical to the
/// serial variant entry for entry.
std::vector<SpectralVerdict> classify_many(const PickFunction& f, std::span<const double> taus,
                                           int jobs = 0);
std::vector<SpectralVerdict> classify_many_serial(const PickFunction& f,
                                                  std::span<const double> taus);

// ------------------------------------------------------------------ //
// enigma membership: bounded averaged quotient for f or for -1/f
// ------------------------------------------------------------------ //

struct EnigmaVerdict {
    bool member = false;
    CcLimEstimate direct_branch;      ///< averaged-quotient series of f
    CcLimEstimate reciprocal_branch;  ///< averaged-quotient series of -1/f
    bool heuristic = true;
};

/// Bounded-series test on the dyadic grid for f (kernel route when the
/// explicit representation is available) and for -1/f (always the direct
/// route: the reciprocal's representation is not explicit). Member when
/// either branch stays bounded; the definition is symmetric in f <-> -1/f.
EnigmaVerdict enigma_member(const PickFunction& f, const Gauge& scale, const Gauge& height,
                            double tau, int jobs = 0);

// ------------------------------------------------------------------ //
// constructed gauges
// ------------------------------------------------------------------ //

/// For a cryptospectral point with nontangential limit 0, the tabulated
/// quotient gauge k(t) = (1/2t) int_{-t}^{t} Im f(x + it) dx sampled on the
/// dyadic grid. With height = identity the averaged-quotient series built
/// against this gauge is identically 1 by construction.
/// ClassificationError unless classify_point says Crypto with limit 0.
Gauge crypto_gauge(const PickFunction& f, double tau);

/// The gauge F(t) = lambda(t) * scale(lambda(t)) / t under which enigma
/// members are fortunate. Requires lambda to grow at least linearly
/// (Omega(t)) and scale to vanish at 0 (o(1)); PreconditionError naming
/// the failed hypothesis otherwise.
Gauge enigma_fortune_gauge(const Gauge& scale, const Gauge& height);

// ------------------------------------------------------------------ //
// conformal invariance of enigma membership
// ------------------------------------------------------------------ //

struct ConformalReport {
    bool gamma_O_t = false;           ///< gamma = O(t) at 0
    bool gamma_monotone = false;
    bool lambda_O_t = false;          ///< height = O(t) at 0
    bool lambda_Omega_gamma = false;  ///< height = Omega(gamma) at 0
    bool scale_augury = false;        ///< scale o height is a gamma-augury
    EnigmaVerdict base;               ///< enigma verdict for f
    EnigmaVerdict composed;           ///< enigma verdict for M o f
    bool agree = false;               ///< base.member == composed.member
    bool heuristic = true;
};

/// Checks the invariance hypotheses symbolically (PreconditionError naming
/// the first failure), verifies the Mobius map is nonsingular at the
/// estimated boundary value (SingularityError otherwise), then compares
/// enigma membership of f and of M o f at tau.
ConformalReport conformal_invariance_check(const PickFunction& f,
                                           const std::array<double, 4>& mobius,
                                           const Gauge& scale, const Gauge& height,
                                           const Gauge& gamma, double tau, int jobs = 0);

// ------------------------------------------------------------------ //
// horocyclic continuity and the kernel-difference bound
// ------------------------------------------------------------------ //

struct HorocycleProfile {
    std::vector<double> beta;           ///< the increasing grid
    std::vector<double> sup_deviation;  ///< max |f(z) - f(tau)| per beta
    cdouble boundary_value{0.0, 0.0};   ///< the estimated f(tau)
    bool heuristic = true;
};

/// For each beta, samples |f(z) - f(tau)| over a deterministic quasi-random
/// net (net_points >= 2000) of the tangential region
///   { tau + x + iy : y >= beta * gamma(alpha |x|) } intersected with the
/// ball |z - tau| <= 1/beta, and records the maximum. gamma must be monotone
/// and O(t); f must have a convergent ray limit at tau (ClassificationError
/// otherwise). The seed offsets the net deterministically; parallel and
/// serial runs agree bit for bit.
HorocycleProfile horocyclic_profile(const PickFunction& f, const Gauge& gamma, double alpha,
                                    double tau, std::span<const double> beta_grid,
                                    int net_points = 2048, unsigned seed = 0, int jobs = 0);

struct KernelBoundReport {
    double observed_sup = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// Brute-force check of the kernel-difference bound
///   sup |gamma(t)/(t - z) - gamma(t)/t| <= max{2C, (1 + beta C)/beta}
/// over a deterministic log-spaced (t, z)-net with z = x + i beta gamma(2x).
/// gamma must be O(t) (PreconditionError) and must satisfy
/// gamma(t) <= C t on the net (ArgumentError when the claimed constant is
/// too small).
KernelBoundReport kernel_extreme_bound_check(const Gauge& gamma, double beta, double C,
                                             int net_size);

} // namespace nevlab
