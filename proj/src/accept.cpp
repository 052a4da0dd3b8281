#include "nevlab/accept.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nevlab/errors.hpp"
#include "nevlab/foliation.hpp"
#include "nevlab/gauge.hpp"
#include "nevlab/measure.hpp"
#include "nevlab/numerics.hpp"
#include "nevlab/pick.hpp"
#include "nevlab/quotient.hpp"
#include "nevlab/regularity.hpp"
#include "nevlab/sweep.hpp"

namespace nevlab {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// ------------------------------------------------------------------ //
// the measure corpus shared by the quotient criteria
// ------------------------------------------------------------------ //

struct CorpusMember {
    std::string name;
    double a = 0.0;
    double b = 0.0;
    Measure mu;
};

std::vector<CorpusMember> quotient_corpus() {
    std::vector<CorpusMember> corpus;
    corpus.push_back({"atom", 0.0, 0.0, Measure::atomic({{0.0, 1.0}})});
    corpus.push_back({"two-atom", 0.0, 0.0, Measure::atomic({{-0.5, 0.7}, {0.5, 0.3}})});
    corpus.push_back({"box", 0.0, 0.0,
                      Measure::from_components(
                          {Measure::PolynomialDensity{{{-1.0, 1.0, {1.0, 0.0, 0.0, 0.0}}}}})});
    corpus.push_back({"sqrt-density", 0.0, 0.0,
                      Measure::from_components({Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}})});
    corpus.push_back({"cantor", 0.0, 0.0, Measure::cantor()});
    corpus.push_back(
        {"mixed", 0.1, 0.5,
         Measure::from_components(
             {Measure::Atoms{{{0.25, 0.4}}},
              Measure::PolynomialDensity{{{-1.0, 1.0, {0.5, 0.0, 0.0, 0.0}}}},
              Measure::SelfSimilar{{{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}},
                                   {0.5, 0.5},
                                   0.3}})});
    return corpus;
}

PickFunction transform_of(const CorpusMember& m) {
    return PickFunction::from_nevanlinna(m.a, m.b, m.mu);
}

struct GaugePair {
    std::string name;
    Gauge scale;
    Gauge height;
};

std::vector<GaugePair> quotient_gauges() {
    return {{"(1, t^2)", Gauge::constant(1.0), Gauge::power_law(1.0, 2.0)},
            {"(t, t)", Gauge::identity(), Gauge::identity()},
            {"(t^0.5, t)", Gauge::power_law(1.0, 0.5), Gauge::identity()}};
}

} // namespace

// ------------------------------------------------------------------ //
// 1. kernel/direct agreement over the corpus
// ------------------------------------------------------------------ //

CriterionResult check_route_agreement(int jobs) {
    auto start = Clock::now();
    CriterionResult r{"route-agreement", false, "", 0.0};

    const auto grid = dyadic_eps_grid(); // 2^-3 .. 2^-20
    double worst = 0.0;
    std::string worst_tag = "none";
    int comparisons = 0;
    int sentinels = 0;

    for (const CorpusMember& m : quotient_corpus()) {
        PickFunction f = transform_of(m);
        for (const GaugePair& g : quotient_gauges()) {
            // Quadrature target 1e-8 (pointwise evaluations track it a decade
            // tighter): measured route disagreement stays below 2e-10, four
            // decades under the 1e-6 gate, at less than half the 60 s budget.
            QuotientSeries direct =
                build_series(f, g.scale, g.height, 0.0, grid, QuotientMethod::Direct, 1e-8, jobs);
            QuotientSeries kernel =
                build_series(f, g.scale, g.height, 0.0, grid, QuotientMethod::Kernel, 1e-8, jobs);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                ++comparisons;
                if (direct.values[i] == kDivergent || kernel.values[i] == kDivergent) {
                    ++sentinels;
                    continue;
                }
                double rel = std::abs(direct.values[i] - kernel.values[i]) /
                             std::max(std::abs(kernel.values[i]), 1e-300);
                if (rel > worst) {
                    worst = rel;
                    worst_tag = m.name + " " + g.name + " eps=2^-" + std::to_string(3 + i);
                }
            }
        }
    }

    r.seconds = seconds_since(start);
    r.pass = sentinels == 0 && worst <= 1e-6 && r.seconds < 60.0;
    std::ostringstream d;
    d << comparisons << " pairs, worst rel " << fmt(worst) << " at " << worst_tag;
    if (sentinels > 0) d << ", " << sentinels << " sentinel values";
    if (r.seconds >= 60.0) d << ", over the 60 s budget";
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 2. closed-form anchor A(eps) = pi / (4 eps)
// ------------------------------------------------------------------ //

CriterionResult check_closed_form_anchor() {
    auto start = Clock::now();
    CriterionResult r{"closed-form-anchor", false, "", 0.0};

    PickFunction pole = PickFunction::from_nevanlinna(0.0, 0.0, Measure::atomic({{0.0, 1.0}}));
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();

    double worst_kernel = 0.0, worst_direct = 0.0;
    for (double eps : dyadic_eps_grid()) {
        double target = std::numbers::pi / (4.0 * eps);
        double ak = averaged_quotient_kernel(pole, one, id, 0.0, eps);
        double ad = averaged_quotient_direct(pole, one, id, 0.0, eps, 1e-13);
        worst_kernel = std::max(worst_kernel, std::abs(ak - target) / target);
        worst_direct = std::max(worst_direct, std::abs(ad - target) / target);
    }

    r.pass = worst_kernel <= 1e-10 && worst_direct <= 1e-10;
    r.seconds = seconds_since(start);
    r.detail = "worst rel: kernel " + fmt(worst_kernel) + ", direct " + fmt(worst_direct) +
               " against pi/(4 eps)";
    return r;
}

// ------------------------------------------------------------------ //
// 3. sandwich bounds fitted at the coarsest eps hold at every finer eps
// ------------------------------------------------------------------ //

CriterionResult check_augur_sandwich() {
    auto start = Clock::now();
    CriterionResult r{"augur-sandwich", false, "", 0.0};

    const auto grid = dyadic_eps_grid();
    Gauge one = Gauge::constant(1.0);
    std::vector<std::pair<std::string, Gauge>> heights{
        {"t", Gauge::identity()}, {"t^2", Gauge::power_law(1.0, 2.0)}};

    int checks = 0, violations = 0;
    double min_slack = kDivergent;
    std::string tightest = "none";

    for (const CorpusMember& m : quotient_corpus()) {
        PickFunction f = transform_of(m);
        for (const auto& [hname, height] : heights) {
            AugurConstants constants = fit_augur_constants(m.mu, m.b, height, grid.front());
            for (double eps : grid) {
                AugurBounds bounds = augur_bounds(m.mu, m.b, one, height, 0.0, eps, constants);
                double A = averaged_quotient_kernel(f, one, height, 0.0, eps);
                ++checks;
                bool lower_ok = bounds.lower <= A * (1.0 + 1e-12);
                bool upper_ok = A <= bounds.upper() * (1.0 + 1e-12);
                if (!lower_ok || !upper_ok) {
                    ++violations;
                    continue;
                }
                double scale = std::max(A, 1e-300);
                double slack = std::min(A - bounds.lower, bounds.upper() - A) / scale;
                if (slack < min_slack) {
                    min_slack = slack;
                    tightest = m.name + " lambda=" + hname;
                }
            }
        }
    }

    r.pass = violations == 0;
    r.seconds = seconds_since(start);
    std::ostringstream d;
    d << violations << " violations in " << checks << " checks; tightest rel slack "
      << fmt(min_slack) << " (" << tightest << ")";
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 4. fortunate <-> sub-density agreement on power-law scenarios
// ------------------------------------------------------------------ //

CriterionResult check_fortune_density() {
    auto start = Clock::now();
    CriterionResult r{"fortune-density", false, "", 0.0};

    Measure uniform = Measure::from_components(
        {Measure::PolynomialDensity{{{-1.0, 1.0, {1.0, 0.0, 0.0, 0.0}}}}});
    Measure atom = Measure::atomic({{0.0, 1.0}});
    auto power_density = [](double p) {
        return Measure::from_components({Measure::PowerDensity{0.0, p, 1.0, 1.0}});
    };

    // (measure, F exponent s, expected verdict): |t|^p against F = t^s is
    // bounded exactly when p >= s; the uniform density has p = 0 and the
    // origin atom fails for every positive window.
    struct Scenario {
        std::string name;
        Measure mu;
        double s;
        bool expected;
    };
    std::vector<Scenario> scenarios;
    scenarios.push_back({"p0.5-s0.5", power_density(0.5), 0.5, true});
    scenarios.push_back({"p0.5-s0.8", power_density(0.5), 0.8, false});
    scenarios.push_back({"p0.5-s0.2", power_density(0.5), 0.2, true});
    scenarios.push_back({"p1-s1", power_density(1.0), 1.0, true});
    scenarios.push_back({"p1-s1.5", power_density(1.0), 1.5, false});
    scenarios.push_back({"uniform-s0", uniform, 0.0, true});
    scenarios.push_back({"uniform-s0.5", uniform, 0.5, false});
    scenarios.push_back({"p1.7-s1", power_density(1.7), 1.0, true});
    scenarios.push_back({"p1.7-s2", power_density(1.7), 2.0, false});
    scenarios.push_back({"atom-s0.5", atom, 0.5, false});
    scenarios.push_back({"p2.5-s2.5", power_density(2.5), 2.5, true});
    scenarios.push_back({"p0.3-s0.3", power_density(0.3), 0.3, true});

    int agreements = 0, expected_hits = 0;
    std::string first_split = "none";
    for (const Scenario& sc : scenarios) {
        Gauge F = sc.s == 0.0 ? Gauge::constant(1.0) : Gauge::power_law(1.0, sc.s);
        bool sub = sub_density_verdict(sc.mu, F, 0.0).holds;
        bool fort = fortunate_verdict(PickFunction::from_nevanlinna(0.0, 0.0, sc.mu), F, 0.0).holds;
        if (sub == fort) ++agreements;
        else if (first_split == "none") first_split = sc.name;
        if (sub == sc.expected && fort == sc.expected) ++expected_hits;
    }

    r.pass = agreements == static_cast<int>(scenarios.size()) &&
             expected_hits == static_cast<int>(scenarios.size());
    r.seconds = seconds_since(start);
    std::ostringstream d;
    d << agreements << "/" << scenarios.size() << " verdicts agree, " << expected_hits << "/"
      << scenarios.size() << " match the exponent rule";
    if (first_split != "none") d << "; first split at " << first_split;
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 5. regular verdict == exponent criterion, with the augury round-trip
// ------------------------------------------------------------------ //

CriterionResult check_regularity_roundtrip() {
    auto start = Clock::now();
    CriterionResult r{"regularity-roundtrip", false, "", 0.0};

    int verdict_hits = 0, augury_hits = 0, combos = 0;
    std::string first_miss = "none";
    for (double p : {0.3, 1.0, 1.7}) {
        Measure mu = Measure::from_components({Measure::PowerDensity{0.0, p, 1.0, 1.0}});
        for (double eta : {1.2, 1.8, 2.4}) {
            ++combos;
            bool expected = p - eta > -1.0;
            Gauge gamma = Gauge::power_law(1.0, eta);
            bool regular = gamma_regular_verdict(mu, gamma, 0.0).holds;
            Gauge window = Gauge::pointwise(
                [mu](double t) {
                    return mu.window_mass(-t, t, IntervalKind::Open) / t;
                },
                "window-density");
            bool augury = is_augury(window, gamma).holds;
            if (regular == expected) ++verdict_hits;
            else if (first_miss == "none")
                first_miss = "verdict p=" + fmt(p) + " eta=" + fmt(eta);
            if (augury == regular) ++augury_hits;
            else if (first_miss == "none")
                first_miss = "augury p=" + fmt(p) + " eta=" + fmt(eta);
        }
    }

    r.pass = verdict_hits == combos && augury_hits == combos;
    r.seconds = seconds_since(start);
    std::ostringstream d;
    d << verdict_hits << "/" << combos << " verdicts match p - eta > -1, " << augury_hits << "/"
      << combos << " augury round-trips";
    if (first_miss != "none") d << "; first miss: " << first_miss;
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 6. Cantor window-mass exponent
// ------------------------------------------------------------------ //

CriterionResult check_cantor_exponent() {
    auto start = Clock::now();
    CriterionResult r{"cantor-exponent", false, "", 0.0};

    Measure mu = Measure::cantor();
    std::vector<double> log_eps, log_mass;
    for (int k = 1; k <= 10; ++k) {
        double eps = std::pow(3.0, -k);
        double mass = mu.window_mass(-eps, eps, IntervalKind::Open);
        log_eps.push_back(std::log(eps));
        log_mass.push_back(std::log(mass));
    }
    double slope = linear_slope(log_eps, log_mass);
    double target = std::log(2.0) / std::log(3.0);

    r.pass = std::abs(slope - target) <= 0.02;
    r.seconds = seconds_since(start);
    r.detail = "fitted slope " + fmt(slope) + " vs log2/log3 = " + fmt(target) + " (err " +
               fmt(std::abs(slope - target)) + ")";
    return r;
}

// ------------------------------------------------------------------ //
// 7. rank-one update resolvents against direct matrix solves
// ------------------------------------------------------------------ //

CriterionResult check_rank_one_consistency() {
    auto start = Clock::now();
    CriterionResult r{"rank-one", false, "", 0.0};

    const int n = 50;
    Eigen::MatrixXd A = jacobi_matrix(std::vector<double>(n, 0.0),
                                      std::vector<double>(n - 1, 0.5));
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
    phi(0) = 1.0;
    PickFunction F = PickFunction::from_resolvent(A, phi);

    double worst = 0.0;
    int points = 0;
    for (double alpha : {-1.0, 0.3, 0.7, 2.0}) {
        PickFunction composed = aronszajn_krein(F, alpha);
        Eigen::MatrixXd perturbed = A + alpha * phi * phi.transpose();
        PickFunction direct = PickFunction::from_resolvent(perturbed, phi);
        for (int j = 0; j < 100; ++j) {
            double x = -2.5 + 5.0 * (j % 20 + 0.5) / 20.0;
            double y = 0.08 * std::pow(2.0, j / 20); // five heights, 0.08 .. 1.28
            cdouble z{x, y};
            cdouble lhs = composed(z);
            cdouble rhs = direct(z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
            ++points;
        }
    }

    r.pass = worst <= 1e-9;
    r.seconds = seconds_since(start);
    r.detail = "worst rel " + fmt(worst) + " over " + std::to_string(points) +
               " samples x 4 couplings";
    return r;
}

// ------------------------------------------------------------------ //
// 8. enigma membership is conformally invariant
// ------------------------------------------------------------------ //

CriterionResult check_conformal_invariance(int jobs) {
    auto start = Clock::now();
    CriterionResult r{"conformal-invariance", false, "", 0.0};

    Gauge gamma = Gauge::power_law(1.0, 1.5);
    Gauge height = Gauge::identity();
    Gauge scale = Gauge::power_law(1.0, 0.75);

    std::vector<std::pair<std::string, PickFunction>> funcs;
    funcs.push_back({"box", PickFunction::from_nevanlinna(
                                0.0, 0.0,
                                Measure::from_components({Measure::PolynomialDensity{
                                    {{-1.0, 1.0, {1.0, 0.0, 0.0, 0.0}}}}}))});
    funcs.push_back({"two-atom", PickFunction::from_nevanlinna(
                                     0.0, 0.0, Measure::atomic({{-0.5, 0.7}, {0.5, 0.3}}))});
    funcs.push_back({"sqrt-density",
                     PickFunction::from_nevanlinna(
                         0.0, 0.0,
                         Measure::from_components({Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}}))});
    funcs.push_back({"line", PickFunction::from_nevanlinna(0.0, 1.0, Measure::atomic({}))});

    std::vector<std::array<double, 4>> maps{
        {1.0, 1.0, 1.0, 2.0}, {2.0, -1.0, 1.0, 1.0}, {1.0, -1.0, 1.0, 3.0}};

    int agreements = 0, cases = 0;
    std::string first_split = "none";
    for (const auto& [fname, f] : funcs) {
        for (std::size_t mi = 0; mi < maps.size(); ++mi) {
            ++cases;
            ConformalReport rep =
                conformal_invariance_check(f, maps[mi], scale, height, gamma, 0.0, jobs);
            if (rep.agree) ++agreements;
            else if (first_split == "none")
                first_split = fname + " map#" + std::to_string(mi + 1) +
                              (rep.base.member ? " (base in, composed out)"
                                               : " (base out, composed in)");
        }
    }

    r.pass = agreements == cases;
    r.seconds = seconds_since(start);
    std::ostringstream d;
    d << agreements << "/" << cases << " membership agreements";
    if (first_split != "none") d << "; first split: " << first_split;
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 9. horocyclic decay for regular members + the kernel difference bound
// ------------------------------------------------------------------ //

CriterionResult check_horocycle_continuity(int jobs) {
    auto start = Clock::now();
    CriterionResult r{"horocycle-continuity", false, "", 0.0};

    std::vector<double> betas;
    for (int k = 1; k <= 10; ++k) betas.push_back(std::ldexp(1.0, k));

    struct Member {
        std::string name;
        Measure mu;
        Gauge gamma;
    };
    std::vector<Member> members;
    members.push_back({"two-atom", Measure::atomic({{-0.5, 0.7}, {0.5, 0.3}}),
                       Gauge::power_law(1.0, 1.5)});
    members.push_back({"t^2-density",
                       Measure::from_components({Measure::PolynomialDensity{
                           {{-1.0, 1.0, {0.0, 0.0, 1.0, 0.0}}}}}),
                       Gauge::power_law(1.0, 1.5)});
    members.push_back({"p2.5-density",
                       Measure::from_components({Measure::PowerDensity{0.0, 2.5, 1.0, 1.0}}),
                       Gauge::power_law(1.0, 2.0)});

    bool all_ok = true;
    std::ostringstream d;
    double worst_final = 0.0;
    for (const Member& m : members) {
        if (!gamma_regular_verdict(m.mu, m.gamma, 0.0).holds) {
            all_ok = false;
            d << m.name << " not regular; ";
            continue;
        }
        PickFunction f = PickFunction::from_nevanlinna(0.0, 0.0, m.mu);
        HorocycleProfile prof = horocyclic_profile(f, m.gamma, 1.0, 0.0, betas, 2048, 0, jobs);
        std::size_t k0 = prof.sup_deviation.size() - 1;
        while (k0 > 0 &&
               prof.sup_deviation[k0] <= prof.sup_deviation[k0 - 1] * (1.0 + 1e-12))
            --k0;
        bool tail_monotone = 2 * k0 <= prof.sup_deviation.size();
        double final_sup = prof.sup_deviation.back();
        worst_final = std::max(worst_final, final_sup);
        if (!(tail_monotone && final_sup < 0.01)) {
            all_ok = false;
            d << m.name << " profile fails (monotone from index " << k0 << ", final "
              << fmt(final_sup) << "); ";
        }
    }

    struct BoundCase {
        Gauge gamma;
        double beta, C;
    };
    std::vector<BoundCase> cases;
    cases.push_back({Gauge::identity(), 1.0, 1.0});
    cases.push_back({Gauge::identity(), 8.0, 1.0});
    cases.push_back({Gauge::power_law(0.5, 1.0), 4.0, 0.5});
    cases.push_back({Gauge::power_law(1.0, 2.0), 2.0, 1.0});
    cases.push_back({Gauge::power_law(1.0, 2.0), 32.0, 1.0});
    cases.push_back({Gauge::power_law(2.0, 1.0), 16.0, 2.0});

    int bound_hits = 0;
    double tightest = kDivergent;
    for (const BoundCase& c : cases) {
        KernelBoundReport rep = kernel_extreme_bound_check(c.gamma, c.beta, c.C, 10000);
        if (rep.holds) ++bound_hits;
        tightest = std::min(tightest, rep.bound - rep.observed_sup);
    }
    if (bound_hits != static_cast<int>(cases.size())) all_ok = false;

    r.pass = all_ok;
    r.seconds = seconds_since(start);
    d << members.size() << " profiles (worst final " << fmt(worst_final) << "), " << bound_hits
      << "/" << cases.size() << " bounds hold (tightest margin " << fmt(tightest) << ")";
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// 10. layer-cake route agreement
// ------------------------------------------------------------------ //

CriterionResult check_layer_cake() {
    auto start = Clock::now();
    CriterionResult r{"layer-cake", false, "", 0.0};

    Measure uniform = Measure::from_components(
        {Measure::PolynomialDensity{{{-1.0, 1.0, {1.0, 0.0, 0.0, 0.0}}}}});
    Measure tsq = Measure::from_components(
        {Measure::PolynomialDensity{{{-1.0, 1.0, {0.0, 0.0, 1.0, 0.0}}}}});
    Measure absd = Measure::from_components({Measure::PowerDensity{0.0, 1.0, 1.0, 1.0}});
    Measure sqrtd = Measure::from_components({Measure::PowerDensity{0.0, 0.5, 1.0, 1.0}});
    Measure two_atom = Measure::atomic({{-0.5, 0.7}, {0.5, 0.3}});
    Measure atom0 = Measure::atomic({{0.0, 1.0}});

    struct Pair {
        std::string name;
        Measure mu;
        Gauge gamma;
        bool convergent;
    };
    std::vector<Pair> pairs;
    pairs.push_back({"uniform/t^0.5", uniform, Gauge::power_law(1.0, 0.5), true});
    pairs.push_back({"abs/t^0.5", absd, Gauge::power_law(1.0, 0.5), true});
    pairs.push_back({"sqrt/t^0.5", sqrtd, Gauge::power_law(1.0, 0.5), true});
    pairs.push_back({"two-atom/t^2", two_atom, Gauge::power_law(1.0, 2.0), true});
    pairs.push_back({"t^2/t^1.5", tsq, Gauge::power_law(1.0, 1.5), true});
    pairs.push_back({"uniform/t^1.5", uniform, Gauge::power_law(1.0, 1.5), false});
    pairs.push_back({"atom0/t", atom0, Gauge::identity(), false});

    int hits = 0;
    double worst_residual = 0.0;
    std::string first_miss = "none";
    for (const Pair& p : pairs) {
        LayerCakeComparison cmp = layer_cake_comparison(p.mu, p.gamma);
        bool ok;
        if (p.convergent) {
            ok = cmp.agree && !cmp.direct.divergent && !cmp.layered.divergent &&
                 cmp.residual < 1e-6;
            worst_residual = std::max(worst_residual, cmp.residual);
        } else {
            ok = cmp.agree && cmp.direct.divergent && cmp.layered.divergent;
        }
        if (ok) ++hits;
        else if (first_miss == "none") first_miss = p.name;
    }

    r.pass = hits == static_cast<int>(pairs.size());
    r.seconds = seconds_since(start);
    std::ostringstream d;
    d << hits << "/" << pairs.size() << " pairs agree, worst convergent residual "
      << fmt(worst_residual);
    if (first_miss != "none") d << "; first miss: " << first_miss;
    r.detail = d.str();
    return r;
}

// ------------------------------------------------------------------ //
// suite registry
// ------------------------------------------------------------------ //

std::vector<std::string> acceptance_suite_names() {
    return {"route-agreement",   "closed-form-anchor", "augur-sandwich",
            "fortune-density",   "regularity-roundtrip", "cantor-exponent",
            "rank-one",          "conformal-invariance", "horocycle-continuity",
            "layer-cake"};
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, int jobs) {
    std::vector<CriterionResult> out;
    auto want = [&suite](const char* name) { return suite == "all" || suite == name; };
    if (want("route-agreement")) out.push_back(check_route_agreement(jobs));
    if (want("closed-form-anchor")) out.push_back(check_closed_form_anchor());
    if (want("augur-sandwich")) out.push_back(check_augur_sandwich());
    if (want("fortune-density")) out.push_back(check_fortune_density());
    if (want("regularity-roundtrip")) out.push_back(check_regularity_roundtrip());
    if (want("cantor-exponent")) out.push_back(check_cantor_exponent());
    if (want("rank-one")) out.push_back(check_rank_one_consistency());
    if (want("conformal-invariance")) out.push_back(check_conformal_invariance(jobs));
    if (want("horocycle-continuity")) out.push_back(check_horocycle_continuity(jobs));
    if (want("layer-cake")) out.push_back(check_layer_cake());
    return out;
}

} // namespace nevlab
