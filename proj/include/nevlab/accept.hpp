#pragma once

#include <string>
#include <vector>

namespace nevlab {

// ------------------------------------------------------------------ //
// end-to-end verification suites
// ------------------------------------------------------------------ //

/// Outcome of one named verification criterion. `detail` is a one-line
/// human-readable summary (worst error, counts, timing).
struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Cross-route agreement of the averaged quotient over the measure corpus,
/// three gauge pairs and the full dyadic eps grid; also enforces its own
/// runtime budget.
CriterionResult check_route_agreement(int jobs = 0);

/// A(eps) = pi / (4 eps) for the origin pole against (1, id), on both routes.
CriterionResult check_closed_form_anchor();

/// Sandwich bounds fitted at the coarsest eps hold at every finer eps for
/// every corpus member, with height t and t^2.
CriterionResult check_augur_sandwich();

/// fortunate_verdict agrees with sub_density_verdict over twelve power-law
/// scenarios.
CriterionResult check_fortune_density();

/// gamma_regular_verdict matches the exponent criterion p - eta > -1 on a
/// 3 x 3 power grid, and the window-density gauge passes is_augury exactly
/// when the verdict is regular.
CriterionResult check_regularity_roundtrip();

/// Log-log slope of the Cantor window mass equals log 2 / log 3 within 0.02.
CriterionResult check_cantor_exponent();

/// Rank-one update resolvents: the composed function agrees with the
/// directly perturbed matrix resolvent at 100 sample points per coupling.
CriterionResult check_rank_one_consistency();

/// enigma_member agreement between f and M o f for four functions and three
/// Mobius maps under one hypothesis-satisfying gauge triple.
CriterionResult check_conformal_invariance(int jobs = 0);

/// Horocyclic profiles of three regular members decay below 0.01, and the
/// kernel difference bound holds on brute-force nets for six combinations.
CriterionResult check_horocycle_continuity(int jobs = 0);

/// The two reciprocal-integral routes agree: residual < 1e-6 on five
/// convergent pairs, matching divergence verdicts on two divergent pairs.
CriterionResult check_layer_cake();

/// Named suites in canonical order; "all" runs every criterion.
std::vector<std::string> acceptance_suite_names();

/// Run one named suite (or "all"). Unknown names return an empty vector.
std::vector<CriterionResult> run_acceptance(const std::string& suite, int jobs = 0);

} // namespace nevlab
