#pragma once

#include <array>
#include <span>

#include "nevlab/gauge.hpp"
#include "nevlab/measure.hpp"
#include "nevlab/pick.hpp"
#include "nevlab/quotient.hpp"

namespace nevlab {

// ------------------------------------------------------------------ //
// boundary-regularity verdicts at a point tau
// ------------------------------------------------------------------ //

enum class RegularityKind { SubDensity, Fortunate, GammaRegular };

const char* to_string(RegularityKind k);

struct RegularityVerdict {
    RegularityKind kind = RegularityKind::SubDensity;
    bool holds = false;
    double C_used = 1.0;     ///< witness constant (first in the sweep that works)
    double statistic = 0.0;  ///< supremum / limsup / integral value; finite when holds
    bool heuristic = true;   ///< finite-sample boundedness and trend decisions
};

/// The existential constants tried by the verdicts, coarse-to-fine.
inline constexpr std::array<double, 4> kDefaultCSweep{0.5, 1.0, 2.0, 4.0};

/// Does mu(tau - eps, tau + eps) / (F(C eps) eps) stay bounded as eps -> 0
/// for some C? Decided on the dyadic eps grid by tail max + log-log trend.
RegularityVerdict sub_density_verdict(const Measure& mu, const Gauge& F, double tau,
                                      std::span<const double> C_sweep = kDefaultCSweep);

/// Fortune verdict for a pure power-law F: constructs the (scale, height)
/// pair with scale o height = F, checks height(eps) / (F(C eps) eps^2)
/// bounded symbolically, and runs the boundedness estimate on the averaged
/// quotient series (kernel route when the explicit representation exists,
/// direct route otherwise).
RegularityVerdict fortunate_verdict(const PickFunction& f, const Gauge& F, double tau);

/// Is 1 / gamma(C |t - tau|) mu-integrable on [tau - 1, tau + 1] for some C?
/// gamma must be monotone and O(1) at 0 (PreconditionError otherwise).
RegularityVerdict gamma_regular_verdict(const Measure& mu, const Gauge& gamma, double tau,
                                        std::span<const double> C_sweep = kDefaultCSweep);

// ------------------------------------------------------------------ //
// the regular <-> fortunate equivalence, checked both ways at desk scale
// ------------------------------------------------------------------ //

struct EquivalenceReport {
    RegularityVerdict regular;  ///< integral side, gamma_regular_verdict
    AuguryCertificate augury;   ///< is the witness gauge a gamma-augury?
    RegularityVerdict fortunate;///< fortune side, run on the power-law fit
    Gauge witness = Gauge::constant(1.0); ///< window-density gauge mu(tau-t, tau+t)/t (or supplied)
    Gauge fitted = Gauge::constant(1.0);  ///< pure power law fitted to the witness samples
    bool agree = false;         ///< regular  <=>  (augury && fortunate)
    bool heuristic = true;
};

/// Forward direction: if mu_f is gamma-regular, the window-density gauge
/// F(t) = mu(tau - t, tau + t)/t must be a gamma-augury and f F-fortunate
/// (fortune checked on the power-law fit of F, since the fortune
/// decomposition is constructive only for power laws). Backward direction:
/// augury + fortunate must imply the regular verdict. Requires the explicit
/// (a, b, mu) representation.
EquivalenceReport regfort_equivalence_check(const PickFunction& f, const Gauge& gamma,
                                            double tau);

/// Same check with a caller-supplied witness gauge instead of the
/// constructed window-density gauge.
EquivalenceReport regfort_equivalence_check(const PickFunction& f, const Gauge& gamma,
                                            double tau, const Gauge& supplied_witness);

} // namespace nevlab
