#include "nevlab/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nevlab/errors.hpp"
#include "nevlab/quadrature.hpp"
#include "selfsim_internal.hpp"

namespace nevlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cdouble kI{0.0, 1.0};

// ---------------------------------------------------------------- //
// cancellation-safe primitives
// ---------------------------------------------------------------- //

// atan(p/y) - atan(q/y); the one-argument form avoids the loss of
// significance when both quotients sit near the same asymptote.
double atan_diff(double p, double q, double y) {
    if (p * q > 0.0) return std::atan(y * (p - q) / (y * y + p * q));
    return std::atan(p / y) - std::atan(q / y);
}

// log(1 + w) on the principal branch, stable for small |w|.
cdouble clog1p(cdouble w) {
    if (std::abs(w) < 0.5) return 2.0 * std::atanh(w / (2.0 + w));
    return std::log(1.0 + w);
}

// ---------------------------------------------------------------- //
// polynomial helpers (densities c0 + c1 t + c2 t^2 + c3 t^3)
// ---------------------------------------------------------------- //

double poly_eval(const std::array<double, 4>& c, double t) {
    return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

// antiderivative of the density
double poly_antider(const std::array<double, 4>& c, double t) {
    return t * (c[0] + t * (c[1] / 2 + t * (c[2] / 3 + t * c[3] / 4)));
}

void require_nonnegative(const Measure::PolynomialDensity::Piece& p) {
    double span = std::max({1.0, std::abs(p.lo), std::abs(p.hi)});
    double scale = std::max({std::abs(p.coeff[0]), std::abs(p.coeff[1]), std::abs(p.coeff[2]),
                             std::abs(p.coeff[3])}) *
                   span * span * span;
    double floor = -1e-9 * std::max(scale, 1e-300);
    auto check = [&](double t) {
        if (poly_eval(p.coeff, t) < floor)
            throw ArgumentError("polynomial density must be nonnegative on its piece");
    };
    check(p.lo);
    check(p.hi);
    // interior critical points of the cubic
    double a = 3.0 * p.coeff[3], b = 2.0 * p.coeff[2], c = p.coeff[1];
    if (a != 0.0) {
        double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            double r = std::sqrt(disc);
            for (double t : {(-b + r) / (2 * a), (-b - r) / (2 * a)})
                if (t > p.lo && t < p.hi) check(t);
        }
    } else if (b != 0.0) {
        double t = -c / b;
        if (t > p.lo && t < p.hi) check(t);
    }
}

// Rebase the density to powers of u = t - x.
std::array<double, 4> poly_rebase(const std::array<double, 4>& c, double x) {
    std::array<double, 4> d{};
    d[0] = poly_eval(c, x);
    d[1] = c[1] + 2 * c[2] * x + 3 * c[3] * x * x;
    d[2] = c[2] + 3 * c[3] * x;
    d[3] = c[3];
    return d;
}

double poisson_poly_piece(const Measure::PolynomialDensity::Piece& p, cdouble z) {
    double x = z.real(), y = z.imag();
    double u1 = p.lo - x, u2 = p.hi - x;
    auto d = poly_rebase(p.coeff, x);
    // Antiderivative differences of u^k y / (u^2 + y^2), k = 0..3, in
    // difference form so far-field pieces keep full relative accuracy.
    double D0 = atan_diff(u2, u1, y);
    double D1 = 0.5 * y * std::log1p((u2 - u1) * (u2 + u1) / (u1 * u1 + y * y));
    double D2 = y * (u2 - u1) - y * y * D0;
    double D3 = 0.5 * y * (u2 - u1) * (u2 + u1) - y * y * D1;
    return d[0] * D0 + d[1] * D1 + d[2] * D2 + d[3] * D3;
}

cdouble cauchy_g_poly_piece(const Measure::PolynomialDensity::Piece& p, cdouble z) {
    const auto& c = p.coeff;
    // p(t) = (t - z) q(t) + R by synthetic division
    cdouble q2 = c[3];
    cdouble q1 = c[2] + z * q2;
    cdouble q0 = c[1] + z * q1;
    cdouble R = c[0] + z * q0;
    auto Q = [&](double t) { return t * (q0 + t * (q1 / 2.0 + t * q2 / 3.0)); };
    cdouble cauchy = Q(p.hi) - Q(p.lo) + R * clog1p((p.hi - p.lo) / (p.lo - z));

    // t p(t) / (1 + t^2) = s(t) + (alpha t + beta)/(1 + t^2)
    double s2 = c[3], s1 = c[2], s0 = c[1] - c[3];
    double alpha = c[0] - c[2], beta = c[3] - c[1];
    auto S = [&](double t) { return t * (s0 + t * (s1 / 2.0 + t * s2 / 3.0)); };
    double corr = S(p.hi) - S(p.lo) +
                  0.5 * alpha * std::log1p((p.hi - p.lo) * (p.hi + p.lo) / (1.0 + p.lo * p.lo)) +
                  beta * atan_diff(p.hi, p.lo, 1.0);
    return cauchy - corr;
}

// ---------------------------------------------------------------- //
// |t - center|^exponent density helpers
// ---------------------------------------------------------------- //

double power_antider(const Measure::PowerDensity& c, double t) {
    double u = t - c.center;
    double a = std::abs(u);
    return (u < 0 ? -1.0 : 1.0) * c.coeff * std::pow(a, c.exponent + 1.0) / (c.exponent + 1.0);
}

std::vector<double> clamp_cuts(std::initializer_list<double> cuts, double lo, double hi) {
    std::vector<double> out;
    for (double c : cuts)
        if (c > lo && c < hi) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- //
// self-similar kernels: every integrand is a combination of simple
// poles, so cell-rule derivatives come from inverse powers
// ---------------------------------------------------------------- //

double dist_to_interval(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

detail::CellKernel window_cell_kernel(double tau, double eps, double y) {
    cdouble zA{tau + eps, y}, zB{tau - eps, y};
    detail::CellKernel k;
    k.value = [tau, eps, y](double t) {
        return cdouble(atan_diff(tau + eps - t, tau - eps - t, y), 0.0);
    };
    k.d2 = [zA, zB](double t) {
        cdouble pa[2], pb[2];
        inverse_powers(t - zA, pa);
        inverse_powers(t - zB, pb);
        return cdouble(std::imag(pa[1] - pb[1]), 0.0);
    };
    k.d3 = [zA, zB](double t) {
        cdouble pa[3], pb[3];
        inverse_powers(t - zA, pa);
        inverse_powers(t - zB, pb);
        return cdouble(-2.0 * std::imag(pa[2] - pb[2]), 0.0);
    };
    k.bound4 = [zA, zB](double lo, double hi) {
        double uA = dist_to_interval(zA.real(), lo, hi);
        double uB = dist_to_interval(zB.real(), lo, hi);
        double y = zA.imag();
        return 6.0 * (im_pole_power_bound(uA, y, std::hypot(uA, y), 4) +
                      im_pole_power_bound(uB, y, std::hypot(uB, y), 4));
    };
    return k;
}

detail::CellKernel cauchy_g_cell_kernel(cdouble z) {
    // g(t) = 1/(t - z) - (1/2)/(t - i) - (1/2)/(t + i)
    struct Pole {
        cdouble coef, z;
    };
    auto poles = std::make_shared<std::vector<Pole>>(
        std::vector<Pole>{{1.0, z}, {-0.5, kI}, {-0.5, -kI}});
    detail::CellKernel k;
    k.value = [poles](double t) {
        cdouble v = 0.0;
        for (const auto& p : *poles) v += p.coef / (t - p.z);
        return v;
    };
    k.d2 = [poles](double t) {
        cdouble v = 0.0;
        for (const auto& p : *poles) {
            cdouble pw[3];
            inverse_powers(t - p.z, pw);
            v += 2.0 * p.coef * pw[2];
        }
        return v;
    };
    k.d3 = [poles](double t) {
        cdouble v = 0.0;
        for (const auto& p : *poles) {
            cdouble pw[4];
            inverse_powers(t - p.z, pw);
            v += -6.0 * p.coef * pw[3];
        }
        return v;
    };
    k.bound4 = [poles](double lo, double hi) {
        double b = 0.0;
        for (const auto& p : *poles) {
            double u = dist_to_interval(p.z.real(), lo, hi);
            double d = std::hypot(u, p.z.imag());
            b += std::abs(p.coef) * 24.0 * std::pow(d, -5.0);
        }
        return b;
    };
    return k;
}

// ---------------------------------------------------------------- //
// component validation
// ---------------------------------------------------------------- //

void validate(const Measure::Atoms& c) {
    if (c.points.empty()) throw ArgumentError("atomic component needs at least one atom");
    for (auto [t, m] : c.points) {
        if (!std::isfinite(t)) throw ArgumentError("atom position must be finite");
        if (!(m > 0.0) || !std::isfinite(m)) throw ArgumentError("atom mass must be positive");
    }
}

void validate(const Measure::PolynomialDensity& c) {
    if (c.pieces.empty()) throw ArgumentError("polynomial density needs at least one piece");
    for (const auto& p : c.pieces) {
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.lo < p.hi))
            throw ArgumentError("density piece needs finite lo < hi");
        for (double ck : p.coeff)
            if (!std::isfinite(ck)) throw ArgumentError("density coefficients must be finite");
        require_nonnegative(p);
    }
}

void validate(const Measure::PowerDensity& c) {
    if (!std::isfinite(c.center)) throw ArgumentError("power density center must be finite");
    if (!(c.exponent > -1.0)) throw ArgumentError("power density needs exponent > -1");
    if (!(c.coeff > 0.0) || !std::isfinite(c.coeff))
        throw ArgumentError("power density coefficient must be positive");
    if (!(c.radius > 0.0) || !std::isfinite(c.radius))
        throw ArgumentError("power density radius must be positive");
}

void validate(Measure::SelfSimilar& c) {
    if (c.maps.size() < 2) throw ArgumentError("self-similar component needs at least two maps");
    if (c.weights.size() != c.maps.size())
        throw ArgumentError("self-similar weights must match the maps");
    for (const auto& m : c.maps) {
        if (!(m.ratio > 0.0) || !(m.ratio < 1.0))
            throw ArgumentError("self-similar ratios must lie in (0, 1)");
        if (!std::isfinite(m.offset)) throw ArgumentError("self-similar offsets must be finite");
    }
    double sum = 0.0;
    for (double w : c.weights) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw ArgumentError("self-similar weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ArgumentError("self-similar weights must sum to one");
    for (double& w : c.weights) w /= sum;
    if (!(c.total > 0.0) || !std::isfinite(c.total))
        throw ArgumentError("self-similar total mass must be positive");
}

void validate(const Measure::LebesgueLine&) {}

// gamma behavior at 0+: -1 vanishing, 0 positive finite limit, +1 blowing up
int gamma_origin_class(const Gauge& g) {
    if (const auto* p = g.power_terms()) {
        if (p->power > 0.0 || (p->power == 0.0 && p->logpower > 0.0)) return -1;
        if (p->power == 0.0 && p->logpower == 0.0) return 0;
        return +1;
    }
    double a = g(std::ldexp(1.0, -60)), b = g(std::ldexp(1.0, -30));
    if (a < 0.9 * b) return -1;
    if (a > 1.1 * b) return +1;
    return 0;
}

const QuadOptions kDensityQuad{1e-10, 0.0, 50000, 1e-14, true};

} // namespace

// ---------------------------------------------------------------- //
// construction
// ---------------------------------------------------------------- //

Measure::Measure(std::vector<Component> comps) : comps_(std::move(comps)) {
    static std::atomic<std::uint64_t> next_id{1};
    host_id_ = next_id.fetch_add(1, std::memory_order_relaxed);
}

Measure Measure::from_components(std::vector<Component> comps) {
    // An empty component list is the zero measure.
    for (auto& c : comps)
        std::visit([](auto& comp) { validate(comp); }, c);
    return Measure(std::move(comps));
}

Measure Measure::atomic(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) return from_components({});
    return from_components({Atoms{std::move(atoms)}});
}

Measure Measure::lebesgue() { return from_components({LebesgueLine{}}); }

Measure Measure::cantor(double total) {
    SelfSimilar c;
    c.maps = {{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}};
    c.weights = {0.5, 0.5};
    c.total = total;
    return from_components({c});
}

Measure Measure::shifted(double delta) const {
    if (!std::isfinite(delta)) throw ArgumentError("shift must be finite");
    std::vector<Component> moved = comps_;
    for (auto& c : moved) {
        if (auto* a = std::get_if<Atoms>(&c)) {
            for (auto& [t, m] : a->points) t += delta;
        } else if (auto* p = std::get_if<PolynomialDensity>(&c)) {
            for (auto& piece : p->pieces) {
                piece.coeff = poly_rebase(piece.coeff, -delta); // q(t) = p(t - delta)
                piece.lo += delta;
                piece.hi += delta;
            }
        } else if (auto* pw = std::get_if<PowerDensity>(&c)) {
            pw->center += delta;
        } else if (auto* s = std::get_if<SelfSimilar>(&c)) {
            // Conjugating each map by the translation keeps the attractor
            // relation: offset' = offset + delta (1 - ratio).
            for (auto& m : s->maps) m.offset += delta * (1.0 - m.ratio);
        }
        // LebesgueLine is translation invariant.
    }
    return Measure(std::move(moved));
}

// ---------------------------------------------------------------- //
// mass queries
// ---------------------------------------------------------------- //

bool Measure::has_lebesgue_line() const {
    for (const auto& c : comps_)
        if (std::holds_alternative<LebesgueLine>(c)) return true;
    return false;
}

double Measure::total_mass() const {
    double total = 0.0;
    for (const auto& c : comps_) {
        total += std::visit(
            [](const auto& comp) -> double {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    double s = 0.0;
                    for (auto [t, m] : comp.points) s += m;
                    return s;
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    double s = 0.0;
                    for (const auto& p : comp.pieces)
                        s += poly_antider(p.coeff, p.hi) - poly_antider(p.coeff, p.lo);
                    return s;
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    return 2.0 * comp.coeff * std::pow(comp.radius, comp.exponent + 1.0) /
                           (comp.exponent + 1.0);
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    return comp.total;
                } else {
                    return std::numeric_limits<double>::infinity();
                }
            },
            c);
    }
    return total;
}

double Measure::point_mass(double t) const {
    double m = 0.0;
    for (const auto& c : comps_)
        if (const auto* a = std::get_if<Atoms>(&c))
            for (auto [p, w] : a->points)
                if (p == t || std::abs(p - t) <= 1e-15 * std::max(1.0, std::abs(t))) m += w;
    return m;
}

std::pair<double, double> Measure::support_hull() const {
    double lo = kDivergent, hi = -kDivergent;
    for (const auto& c : comps_) {
        auto [clo, chi] = std::visit(
            [](const auto& comp) -> std::pair<double, double> {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    double a = kDivergent, b = -kDivergent;
                    for (auto [t, m] : comp.points) {
                        a = std::min(a, t);
                        b = std::max(b, t);
                    }
                    return {a, b};
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    double a = kDivergent, b = -kDivergent;
                    for (const auto& p : comp.pieces) {
                        a = std::min(a, p.lo);
                        b = std::max(b, p.hi);
                    }
                    return {a, b};
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    return {comp.center - comp.radius, comp.center + comp.radius};
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    auto st = detail::selfsim_stats(comp);
                    return {st.hull_lo, st.hull_hi};
                } else {
                    return {-std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity()};
                }
            },
            c);
        lo = std::min(lo, clo);
        hi = std::max(hi, chi);
    }
    return {lo, hi};
}

double Measure::window_mass(double lo, double hi, IntervalKind kind, double tol) const {
    if (!(lo <= hi)) throw ArgumentError("window needs lo <= hi");
    double mass = 0.0;
    for (const auto& c : comps_) {
        mass += std::visit(
            [&](const auto& comp) -> double {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    double s = 0.0;
                    for (auto [t, m] : comp.points) {
                        bool inside = kind == IntervalKind::Open ? (t > lo && t < hi)
                                                                 : (t >= lo && t <= hi);
                        if (inside) s += m;
                    }
                    return s;
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    double s = 0.0;
                    for (const auto& p : comp.pieces) {
                        double a = std::max(lo, p.lo), b = std::min(hi, p.hi);
                        if (a < b) s += poly_antider(p.coeff, b) - poly_antider(p.coeff, a);
                    }
                    return s;
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    double a = std::max(lo, comp.center - comp.radius);
                    double b = std::min(hi, comp.center + comp.radius);
                    if (a >= b) return 0.0;
                    return power_antider(comp, b) - power_antider(comp, a);
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    return detail::selfsim_window_mass(comp, lo, hi, tol);
                } else {
                    return hi - lo;
                }
            },
            c);
    }
    return mass;
}

// ---------------------------------------------------------------- //
// harmonic-extension integrals
// ---------------------------------------------------------------- //

double Measure::poisson(cdouble z, double rel_tol) const {
    if (!(z.imag() > 0.0)) throw DomainError("harmonic extension needs Im z > 0");
    double x = z.real(), y = z.imag();
    double out = 0.0;
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
        const auto& c = comps_[ci];
        out += std::visit(
            [&](const auto& comp) -> double {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    double s = 0.0;
                    for (auto [t, m] : comp.points) {
                        double u = t - x;
                        s += m * y / (u * u + y * y);
                    }
                    return s;
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    double s = 0.0;
                    for (const auto& p : comp.pieces) s += poisson_poly_piece(p, z);
                    return s;
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    // work in s = t - center so the |s|^p singularity sits at
                    // exactly 0 and panels can shrink without bound
                    double xc = x - comp.center;
                    auto f = [&](double s) {
                        if (s == 0.0) return 0.0;
                        double u = s - xc;
                        return comp.coeff * std::pow(std::abs(s), comp.exponent) * y /
                               (u * u + y * y);
                    };
                    auto cuts = clamp_cuts({0.0, xc - y, xc, xc + y}, -comp.radius, comp.radius);
                    return integrate(f, -comp.radius, comp.radius, kDensityQuad, cuts).value;
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    return detail::selfsim_poisson_cached(host_id_, ci, comp, x, y, rel_tol);
                } else {
                    return kPi;
                }
            },
            c);
    }
    return out;
}

cdouble Measure::cauchy_g(cdouble z) const {
    if (!(z.imag() > 0.0)) throw DomainError("Cauchy transform needs Im z > 0");
    cdouble out = 0.0;
    for (const auto& c : comps_) {
        out += std::visit(
            [&](const auto& comp) -> cdouble {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    cdouble s = 0.0;
                    for (auto [t, m] : comp.points)
                        s += m * (1.0 / (t - z) - t / (1.0 + t * t));
                    return s;
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    cdouble s = 0.0;
                    for (const auto& p : comp.pieces) s += cauchy_g_poly_piece(p, z);
                    return s;
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    double cc = comp.center;
                    auto f = [&](double s) -> cdouble {
                        if (s == 0.0) return 0.0;
                        double t = s + cc;
                        return comp.coeff * std::pow(std::abs(s), comp.exponent) *
                               (1.0 / (t - z) - t / (1.0 + t * t));
                    };
                    auto cuts = clamp_cuts({0.0, z.real() - cc}, -comp.radius, comp.radius);
                    return integrate_complex(f, -comp.radius, comp.radius, kDensityQuad, cuts)
                        .value;
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    return detail::selfsim_integrate(comp, cauchy_g_cell_kernel(z)).value;
                } else {
                    return cdouble(0.0, kPi);
                }
            },
            c);
    }
    return out;
}

double Measure::window_kernel(double tau, double eps, double y) const {
    if (!(eps > 0.0) || !(y > 0.0))
        throw ArgumentError("window kernel needs eps > 0 and y > 0");
    double A = tau + eps, B = tau - eps;
    double out = 0.0;
    for (const auto& c : comps_) {
        out += std::visit(
            [&](const auto& comp) -> double {
                using T = std::decay_t<decltype(comp)>;
                if constexpr (std::is_same_v<T, Atoms>) {
                    double s = 0.0;
                    for (auto [t, m] : comp.points) s += m * atan_diff(A - t, B - t, y);
                    return s;
                } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
                    double s = 0.0;
                    for (const auto& p : comp.pieces) {
                        auto f = [&](double t) {
                            return poly_eval(p.coeff, t) * atan_diff(A - t, B - t, y);
                        };
                        auto cuts = clamp_cuts({B, tau, A}, p.lo, p.hi);
                        s += integrate(f, p.lo, p.hi, kDensityQuad, cuts).value;
                    }
                    return s;
                } else if constexpr (std::is_same_v<T, PowerDensity>) {
                    double cc = comp.center;
                    auto f = [&](double s) {
                        if (s == 0.0) return 0.0;
                        double t = s + cc;
                        return comp.coeff * std::pow(std::abs(s), comp.exponent) *
                               atan_diff(A - t, B - t, y);
                    };
                    auto cuts =
                        clamp_cuts({0.0, B - cc, tau - cc, A - cc}, -comp.radius, comp.radius);
                    return integrate(f, -comp.radius, comp.radius, kDensityQuad, cuts).value;
                } else if constexpr (std::is_same_v<T, SelfSimilar>) {
                    return detail::selfsim_integrate(comp, window_cell_kernel(tau, eps, y))
                        .value.real();
                } else {
                    return kPi * (A - B);
                }
            },
            c);
    }
    return out;
}

// ---------------------------------------------------------------- //
// reciprocal-gauge integral, direct route
// ---------------------------------------------------------------- //

namespace {

// Contribution of one dyadic annulus {a <= |t| <= b} for density-like
// components; atoms are handled separately.
double annulus_increment(const Measure::Component& comp, const Gauge& gamma, double a, double b) {
    const QuadOptions block_quad{1e-9, 0.0, 600, 1e-14, false};
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Measure::Atoms>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, Measure::PolynomialDensity>) {
                double s = 0.0;
                for (const auto& p : c.pieces)
                    for (double sign : {1.0, -1.0}) {
                        double lo = std::max(p.lo, sign > 0 ? a : -b);
                        double hi = std::min(p.hi, sign > 0 ? b : -a);
                        if (lo >= hi) continue;
                        auto f = [&](double t) {
                            return poly_eval(p.coeff, t) / gamma(std::abs(t));
                        };
                        s += integrate(f, lo, hi, block_quad).value;
                    }
                return s;
            } else if constexpr (std::is_same_v<T, Measure::PowerDensity>) {
                double s = 0.0;
                for (double sign : {1.0, -1.0}) {
                    double lo = std::max(c.center - c.radius, sign > 0 ? a : -b);
                    double hi = std::min(c.center + c.radius, sign > 0 ? b : -a);
                    if (lo >= hi) continue;
                    // shifted so the possible |s|^p singularity sits at exactly 0
                    double cc = c.center;
                    auto f = [&](double u) {
                        if (u == 0.0) return 0.0;
                        return c.coeff * std::pow(std::abs(u), c.exponent) /
                               gamma(std::abs(u + cc));
                    };
                    auto cuts = clamp_cuts({0.0}, lo - cc, hi - cc);
                    s += integrate(f, lo - cc, hi - cc, block_quad, cuts).value;
                }
                return s;
            } else if constexpr (std::is_same_v<T, Measure::SelfSimilar>) {
                auto st = detail::selfsim_stats(c);
                double s = 0.0;
                const int sub = 64;
                for (int j = 0; j < sub; ++j) {
                    double p = a * std::pow(b / a, static_cast<double>(j) / sub);
                    double q = a * std::pow(b / a, static_cast<double>(j + 1) / sub);
                    double w = 0.5 * (1.0 / gamma(p) + 1.0 / gamma(q));
                    double m = 0.0;
                    if (q >= st.hull_lo && p <= st.hull_hi)
                        m += detail::selfsim_window_mass(c, p, q, 1e-14 * c.total);
                    if (-p >= st.hull_lo && -q <= st.hull_hi)
                        m += detail::selfsim_window_mass(c, -q, -p, 1e-14 * c.total);
                    s += m * w;
                }
                return s;
            } else {
                auto f = [&](double t) { return 1.0 / gamma(t); };
                return 2.0 * integrate(f, a, b, block_quad).value;
            }
        },
        comp);
}

} // namespace

IntegralOutcome Measure::reciprocal_gauge_integral(const Gauge& gamma) const {
    IntegralOutcome out;

    // atoms: exact reciprocal sums, with the origin handled by the gauge limit
    for (const auto& c : comps_) {
        if (const auto* a = std::get_if<Atoms>(&c)) {
            for (auto [t, m] : a->points) {
                double r = std::abs(t);
                if (r > 1.0) continue;
                if (r < 1e-300) {
                    int cls = gamma_origin_class(gamma);
                    if (cls < 0) {
                        out.divergent = true;
                        out.note = "atom at the origin against a vanishing gauge";
                        return out;
                    }
                    if (cls == 0) out.value += m / gamma(std::ldexp(1.0, -40));
                    // gauge blows up at 0: the atom contributes nothing
                } else {
                    out.value += m / gamma(r);
                }
            }
        }
    }

    // everything else: dyadic annuli toward the origin with trend detection
    std::vector<double> increments(56, 0.0);
    for (int k = 0; k < 56; ++k) {
        double b = std::ldexp(1.0, -k);
        double a = 0.5 * b;
        for (const auto& c : comps_) increments[k] += annulus_increment(c, gamma, a, b);
    }
    auto sum = sum_dyadic_blocks(increments);
    if (sum.divergent) {
        out.divergent = true;
        out.note = "reciprocal integral diverges near the origin";
        return out;
    }
    out.value += sum.value;
    return out;
}

// ---------------------------------------------------------------- //
// reciprocal-gauge integral, cumulative-mass route
// ---------------------------------------------------------------- //

IntegralOutcome Measure::layer_cake_reciprocal(const Gauge& gamma) const {
    if (gamma.monotone_direction() < 0)
        throw PreconditionError("cumulative-mass route requires a monotone increasing gauge",
                                "monotone increasing gauge");

    // presplit candidates: radii where the cumulative mass has kinks or jumps
    std::vector<double> kinks;
    for (const auto& c : comps_) {
        if (const auto* a = std::get_if<Atoms>(&c))
            for (auto [t, m] : a->points) kinks.push_back(std::abs(t));
        if (const auto* p = std::get_if<PolynomialDensity>(&c))
            for (const auto& piece : p->pieces) {
                kinks.push_back(std::abs(piece.lo));
                kinks.push_back(std::abs(piece.hi));
            }
    }
    if (const auto* tab = gamma.table())
        for (auto [t, v] : tab->samples) kinks.push_back(t);
    std::sort(kinks.begin(), kinks.end());

    auto integrand = [&](double t) {
        double g = gamma(t);
        return window_mass(-t, t, IntervalKind::Closed) * gamma.derivative(t) / (g * g);
    };

    const QuadOptions block_quad{1e-7, 0.0, 800, 1e-13, false};
    std::vector<double> increments(56, 0.0);
    for (int k = 0; k < 56; ++k) {
        double b = std::ldexp(1.0, -k);
        double a = 0.5 * b;
        std::vector<double> cuts;
        for (double t : kinks)
            if (t > a && t < b) cuts.push_back(t);
        increments[k] = integrate(integrand, a, b, block_quad, cuts).value;
    }

    IntegralOutcome out;
    auto sum = sum_dyadic_blocks(increments);
    if (sum.divergent) {
        out.divergent = true;
        out.note = "cumulative-mass integral diverges near the origin";
        return out;
    }
    double gamma_one;
    try {
        gamma_one = gamma(1.0);
    } catch (const DomainError&) {
        gamma_one = gamma(1.0 - 1e-12);
    }
    out.value = sum.value + window_mass(-1.0, 1.0, IntervalKind::Closed) / gamma_one;
    return out;
}

LayerCakeComparison layer_cake_comparison(const Measure& mu, const Gauge& gamma,
                                          double residual_tol) {
    LayerCakeComparison cmp;
    cmp.direct = mu.reciprocal_gauge_integral(gamma);
    cmp.layered = mu.layer_cake_reciprocal(gamma);
    if (cmp.direct.divergent != cmp.layered.divergent) {
        cmp.residual = kDivergent;
        cmp.agree = false;
        return cmp;
    }
    if (cmp.direct.divergent) {
        cmp.residual = 0.0;
        cmp.agree = true;
        return cmp;
    }
    cmp.residual = std::abs(cmp.direct.value - cmp.layered.value) /
                   std::max(1.0, std::abs(cmp.direct.value));
    cmp.agree = cmp.residual <= residual_tol;
    return cmp;
}

} // namespace nevlab
