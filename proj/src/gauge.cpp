#include "nevlab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nevlab/errors.hpp"
#include "nevlab/numerics.hpp"

namespace nevlab {

namespace {

std::string format_str(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

double eval_power_law(const Gauge::PowerLaw& p, double t) {
    if (!(t > 0.0)) throw DomainError("gauge argument must be positive");
    double v = p.coeff * std::pow(t, p.power);
    if (p.logpower != 0.0) {
        if (t >= 1.0) throw DomainError("log-carrying gauge is defined on (0, 1)");
        v *= std::pow(std::log(1.0 / t), p.logpower);
    }
    return v;
}

// Power-law extrapolation through the two smallest nodes.
double table_head_exponent(const Gauge::Table& tab) {
    const auto& [t0, v0] = tab.samples[0];
    const auto& [t1, v1] = tab.samples[1];
    return std::log(v1 / v0) / std::log(t1 / t0);
}

double eval_table(const Gauge::Table& tab, double t) {
    if (!(t > 0.0)) throw DomainError("gauge argument must be positive");
    const auto& s = tab.samples;
    if (t <= s.front().first) {
        double m = table_head_exponent(tab);
        return s.front().second * std::pow(t / s.front().first, m);
    }
    if (t >= s.back().first) return s.back().second;
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double x, const auto& node) { return x < node.first; });
    const auto& [tb, vb] = *it;
    const auto& [ta, va] = *(it - 1);
    double w = (t - ta) / (tb - ta);
    return va + w * (vb - va);
}

} // namespace

// ------------------------------------------------------------------ //
// construction
// ------------------------------------------------------------------ //

Gauge Gauge::power_law(double coeff, double power, double logpower) {
    if (!(coeff > 0.0) || !std::isfinite(coeff))
        throw ArgumentError("gauge coefficient must be positive and finite");
    if (!std::isfinite(power) || !std::isfinite(logpower))
        throw ArgumentError("gauge exponents must be finite");
    return Gauge(PowerLaw{coeff, power, logpower});
}

Gauge Gauge::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ArgumentError("tabulated gauge needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto [t, v] = samples[i];
        if (!(t > 0.0) || t > 1.0 + 1e-9)
            throw ArgumentError("tabulated gauge nodes must lie in (0, 1]");
        if (!(v > 0.0) || !std::isfinite(v))
            throw ArgumentError("tabulated gauge values must be positive and finite");
        if (i > 0 && !(t > samples[i - 1].first))
            throw ArgumentError("tabulated gauge nodes must be strictly increasing");
    }
    int dir = samples.back().second >= samples.front().second ? +1 : -1;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double prev = samples[i - 1].second, cur = samples[i].second;
        double slack = 1e-8 * std::max(prev, cur);
        if (dir > 0 ? cur < prev - slack : cur > prev + slack)
            throw ArgumentError("tabulated gauge values must be monotone");
    }
    return Gauge(Table{std::move(samples)});
}

Gauge Gauge::pointwise(std::function<double(double)> fn, std::string label) {
    if (!fn) throw ArgumentError("pointwise gauge needs a callable");
    return Gauge(Pointwise{std::move(fn), std::move(label)});
}

// ------------------------------------------------------------------ //
// evaluation and shape queries
// ------------------------------------------------------------------ //

double Gauge::operator()(double t) const {
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerLaw>) return eval_power_law(f, t);
            else if constexpr (std::is_same_v<T, Table>) return eval_table(f, t);
            else if constexpr (std::is_same_v<T, Composite>) return (*f.outer)((*f.inner)(t));
            else return f.fn(t);
        },
        form_);
}

bool Gauge::is_power_law() const { return std::holds_alternative<PowerLaw>(form_); }

bool Gauge::is_pure_power_law() const {
    const auto* p = std::get_if<PowerLaw>(&form_);
    return p && p->logpower == 0.0;
}

const Gauge::PowerLaw* Gauge::power_terms() const { return std::get_if<PowerLaw>(&form_); }
const Gauge::Table* Gauge::table() const { return std::get_if<Table>(&form_); }

double Gauge::derivative(double t) const {
    if (const auto* p = power_terms()) {
        if (p->logpower == 0.0) return p->coeff * p->power * std::pow(t, p->power - 1.0);
        double L = std::log(1.0 / t);
        return p->coeff * std::pow(t, p->power - 1.0) * std::pow(L, p->logpower - 1.0) *
               (p->power * L - p->logpower);
    }
    if (const auto* tab = table()) {
        const auto& s = tab->samples;
        if (t <= s.front().first) {
            double m = table_head_exponent(*tab);
            return m * eval_table(*tab, t) / t;
        }
        if (t >= s.back().first) return 0.0;
        auto it = std::upper_bound(s.begin(), s.end(), t,
                                   [](double x, const auto& node) { return x < node.first; });
        return (it->second - (it - 1)->second) / (it->first - (it - 1)->first);
    }
    if (const auto* c = std::get_if<Composite>(&form_)) {
        double inner = (*c->inner)(t);
        return c->outer->derivative(inner) * c->inner->derivative(t);
    }
    double h = std::max(t * 1e-6, 1e-300);
    return ((*this)(t + h) - (*this)(std::max(t - h, t * 0.5))) /
           ((t + h) - std::max(t - h, t * 0.5));
}

int Gauge::monotone_direction() const {
    if (const auto* p = power_terms()) {
        if (p->power > 0.0) return +1;
        if (p->power < 0.0) return -1;
        if (p->logpower < 0.0) return +1; // log(1/t) falls as t rises
        if (p->logpower > 0.0) return -1;
        return +1; // constant: nondecreasing
    }
    if (const auto* tab = table())
        return tab->samples.back().second >= tab->samples.front().second ? +1 : -1;
    if (const auto* c = std::get_if<Composite>(&form_)) {
        int a = c->outer->monotone_direction(), b = c->inner->monotone_direction();
        return a * b;
    }
    // Sample a dyadic grid and look for a consistent trend.
    std::vector<double> vals;
    for (int k = 30; k >= 1; --k) {
        double t = std::ldexp(1.0, -k);
        double v = (*this)(t);
        if (std::isfinite(v)) vals.push_back(v);
    }
    if (vals.size() < 4) return 0;
    bool up = true, down = true;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        double slack = 1e-8 * std::max(std::abs(vals[i - 1]), std::abs(vals[i]));
        if (vals[i] < vals[i - 1] - slack) up = false;
        if (vals[i] > vals[i - 1] + slack) down = false;
    }
    if (up) return +1;
    if (down) return -1;
    return 0;
}

std::string Gauge::describe() const {
    if (const auto* p = power_terms()) {
        if (p->logpower == 0.0) return format_str("%.6g * t^%.6g", p->coeff, p->power);
        return format_str("%.6g * t^%.6g * log(1/t)^%.6g", p->coeff, p->power, p->logpower);
    }
    if (const auto* tab = table())
        return format_str("table[%g nodes on [%.3g, ...]]",
                          static_cast<double>(tab->samples.size()), tab->samples.front().first);
    if (const auto* c = std::get_if<Composite>(&form_))
        return "(" + c->outer->describe() + ") o (" + c->inner->describe() + ")";
    return std::get<Pointwise>(form_).label;
}

// ------------------------------------------------------------------ //
// algebra
// ------------------------------------------------------------------ //

Gauge compose(const Gauge& outer, const Gauge& inner) {
    if (outer.is_pure_power_law() && inner.is_pure_power_law()) {
        const auto& o = *outer.power_terms();
        const auto& i = *inner.power_terms();
        // o(i(t)) = c_o (c_i t^{p_i})^{p_o} = c_o c_i^{p_o} t^{p_i p_o}
        return Gauge::power_law(o.coeff * std::pow(i.coeff, o.power), o.power * i.power);
    }
    auto po = std::make_shared<Gauge>(outer);
    auto pi = std::make_shared<Gauge>(inner);
    return Gauge::pointwise([po, pi](double t) { return (*po)((*pi)(t)); },
                            "(" + outer.describe() + ") o (" + inner.describe() + ")");
}

Gauge multiply(const Gauge& g, const Gauge& h) {
    if (g.is_power_law() && h.is_power_law()) {
        const auto& a = *g.power_terms();
        const auto& b = *h.power_terms();
        return Gauge::power_law(a.coeff * b.coeff, a.power + b.power, a.logpower + b.logpower);
    }
    auto pg = std::make_shared<Gauge>(g);
    auto ph = std::make_shared<Gauge>(h);
    return Gauge::pointwise([pg, ph](double t) { return (*pg)(t) * (*ph)(t); },
                            "(" + g.describe() + ") * (" + h.describe() + ")");
}

Gauge divide(const Gauge& g, const Gauge& h) {
    if (g.is_power_law() && h.is_power_law()) {
        const auto& a = *g.power_terms();
        const auto& b = *h.power_terms();
        return Gauge::power_law(a.coeff / b.coeff, a.power - b.power, a.logpower - b.logpower);
    }
    auto pg = std::make_shared<Gauge>(g);
    auto ph = std::make_shared<Gauge>(h);
    return Gauge::pointwise([pg, ph](double t) { return (*pg)(t) / (*ph)(t); },
                            "(" + g.describe() + ") / (" + h.describe() + ")");
}

bool symbolically_equal(const Gauge& g, const Gauge& h, double rel_tol) {
    const auto* a = g.power_terms();
    const auto* b = h.power_terms();
    if (!a || !b) return false;
    auto close = [rel_tol](double x, double y) {
        return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
    };
    return close(a->coeff, b->coeff) && close(a->power, b->power) &&
           close(a->logpower, b->logpower);
}

// ------------------------------------------------------------------ //
// asymptotic comparison
// ------------------------------------------------------------------ //

const char* to_string(AsymptoticClass c) {
    switch (c) {
        case AsymptoticClass::LittleO: return "o";
        case AsymptoticClass::BigO: return "O";
        case AsymptoticClass::Theta: return "Theta";
        case AsymptoticClass::BigOmega: return "Omega";
        case AsymptoticClass::LittleOmega: return "omega";
        case AsymptoticClass::Incomparable: return "incomparable";
    }
    return "?";
}

bool implies_O(AsymptoticClass c) {
    return c == AsymptoticClass::LittleO || c == AsymptoticClass::BigO ||
           c == AsymptoticClass::Theta;
}

bool implies_Omega(AsymptoticClass c) {
    return c == AsymptoticClass::LittleOmega || c == AsymptoticClass::BigOmega ||
           c == AsymptoticClass::Theta;
}

AsymptoticVerdict asymptotic_class(const Gauge& g, const Gauge& h) {
    if (g.is_power_law() && h.is_power_law()) {
        // g/h ~ t^{dp} log(1/t)^{dq}: decided lexicographically as t -> 0+.
        double dp = g.power_terms()->power - h.power_terms()->power;
        double dq = g.power_terms()->logpower - h.power_terms()->logpower;
        const double tol = 1e-12;
        if (dp > tol) return {AsymptoticClass::LittleO, false};
        if (dp < -tol) return {AsymptoticClass::LittleOmega, false};
        if (dq > tol) return {AsymptoticClass::LittleOmega, false};
        if (dq < -tol) return {AsymptoticClass::LittleO, false};
        return {AsymptoticClass::Theta, false};
    }

    std::vector<double> lt, lr;
    for (int k = 2; k <= 40; ++k) {
        double t = std::ldexp(1.0, -k);
        double gv = g(t), hv = h(t);
        if (!(gv > 0.0) || !(hv > 0.0) || !std::isfinite(gv) || !std::isfinite(hv)) continue;
        lt.push_back(std::log(t));
        lr.push_back(std::log(gv / hv));
    }
    if (lt.size() < 6) return {AsymptoticClass::Incomparable, true};

    std::size_t half = lt.size() / 2;
    std::vector<double> tt(lt.begin() + half, lt.end());
    std::vector<double> tr(lr.begin() + half, lr.end());
    double slope = linear_slope(tt, tr);
    double lo = *std::min_element(tr.begin(), tr.end());
    double hi = *std::max_element(tr.begin(), tr.end());

    // As t -> 0+, log t -> -inf: positive slope means the ratio vanishes.
    if (slope >= 0.05) return {AsymptoticClass::LittleO, true};
    if (slope <= -0.05) return {AsymptoticClass::LittleOmega, true};
    if (hi - lo <= std::log(100.0)) return {AsymptoticClass::Theta, true};
    if (slope >= 0.02) return {AsymptoticClass::BigO, true};
    if (slope <= -0.02) return {AsymptoticClass::BigOmega, true};
    return {AsymptoticClass::Incomparable, true};
}

// ------------------------------------------------------------------ //
// gamma-augury test
// ------------------------------------------------------------------ //

AuguryCertificate is_augury(const Gauge& F, const Gauge& gamma, double C) {
    if (!(C > 0.0) || !std::isfinite(C)) throw ArgumentError("augury scale C must be positive");
    if (gamma.monotone_direction() < 0)
        throw PreconditionError("augury test requires a monotone increasing gauge",
                                "monotone increasing gauge");

    if (F.is_power_law() && gamma.is_power_law()) {
        double s = F.power_terms()->power, qF = F.power_terms()->logpower;
        double eta = gamma.power_terms()->power, qg = gamma.power_terms()->logpower;
        if (eta == 0.0 && qg == 0.0)
            return {true, false, "constant gauge: the induced Stieltjes measure vanishes"};
        // Integrand t * F(Ct) dgamma / gamma^2 ~ t^x log(1/t)^y near 0.
        double x, y;
        if (eta > 0.0) {
            x = s - eta;
            y = qF - qg;
        } else {
            x = s; // eta == 0, qg < 0: dgamma/gamma^2 ~ -qg t^-1 log(1/t)^{-qg-1} dt
            y = qF - qg - 1.0;
        }
        const double tol = 1e-12;
        bool holds = x > -1.0 + tol || (std::abs(x + 1.0) <= tol && y < -1.0 - tol);
        return {holds, false,
                format_str("exact exponent certificate: s - eta = %.17g vs threshold -1 "
                           "(log refinement %.17g)",
                           x, y)};
    }

    // Numeric probe: geometric blocks down to 2^-40, midpoint Stieltjes sums.
    const double T = std::min(1.0, 1.0 / C) * (1.0 - 1e-9);
    std::vector<double> increments;
    increments.reserve(40);
    double total_sample = 0.0;
    for (int k = 0; k < 40; ++k) {
        double b = T * std::ldexp(1.0, -k);
        double a = 0.5 * b;
        double block = 0.0;
        const int sub = 8;
        double prev_t = a, prev_g = gamma(a);
        for (int j = 1; j <= sub; ++j) {
            double t = a * std::pow(b / a, static_cast<double>(j) / sub);
            double gv = gamma(t);
            double dg = std::max(gv - prev_g, 0.0);
            double m = std::sqrt(prev_t * t);
            double gm = gamma(m);
            if (gm > 0.0 && dg > 0.0) block += m * F(C * m) * dg / (gm * gm);
            prev_t = t;
            prev_g = gv;
        }
        increments.push_back(block);
        total_sample += block;
    }
    auto sum = sum_dyadic_blocks(increments);
    if (sum.divergent)
        return {false, true, "numeric integrability probe diverges: " + std::string(sum.why())};
    return {true, true,
            format_str("numeric integrability probe converges: ~%.6g over blocks down to 2^-40",
                       sum.value)};
}

// ------------------------------------------------------------------ //
// fortune decomposition
// ------------------------------------------------------------------ //

FortuneDecomposition decompose_fortune(const Gauge& F) {
    if (!F.is_pure_power_law())
        throw UnsupportedFormError("fortune decomposition is implemented for pure power laws");
    double c = F.power_terms()->coeff;
    double s = F.power_terms()->power;

    // lambda(t) = min{F(t) t^2, t} = min{c t^{s+2}, t} near 0, resolved symbolically.
    Gauge lambda = Gauge::identity();
    if (s > -1.0) lambda = Gauge::power_law(c, s + 2.0);
    else if (s == -1.0) lambda = Gauge::power_law(std::min(c, 1.0), 1.0);

    // k = F o lambda^{-1}: for lambda = cl t^pl, k(u) = c (u/cl)^{s/pl}.
    double cl = lambda.power_terms()->coeff;
    double pl = lambda.power_terms()->power;
    Gauge k = (s == 0.0) ? Gauge::constant(c)
                         : Gauge::power_law(c * std::pow(cl, -s / pl), s / pl);
    return {k, lambda};
}

} // namespace nevlab
