#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nevlab {

// ------------------------------------------------------------------ //
// asymptotic comparison verdicts (behavior as t -> 0+)
// ------------------------------------------------------------------ //

enum class AsymptoticClass { LittleO, BigO, Theta, BigOmega, LittleOmega, Incomparable };

struct AsymptoticVerdict {
    AsymptoticClass cls;
    bool heuristic; ///< false only for the exact symbolic comparison
};

const char* to_string(AsymptoticClass c);
bool implies_O(AsymptoticClass c);     ///< g = O(h)
bool implies_Omega(AsymptoticClass c); ///< g = Omega(h)

// ------------------------------------------------------------------ //
// Gauge: positive function on (0, 1), symbolic c*t^p*log(1/t)^q,
// tabulated with linear interpolation, or a composite/pointwise form
// ------------------------------------------------------------------ //

class Gauge {
public:
    struct PowerLaw {
        double coeff = 1.0;
        double power = 0.0;
        double logpower = 0.0; ///< exponent of log(1/t)
    };
    struct Table {
        /// (t, value) samples, t strictly increasing in (0, 1], values positive,
        /// monotone up to 1e-8 relative slack. Evaluation below the smallest
        /// node extrapolates the power law fitted through the two smallest
        /// nodes; above the largest node the last value is held.
        std::vector<std::pair<double, double>> samples;
    };
    struct Composite {
        std::shared_ptr<const Gauge> outer, inner;
    };
    struct Pointwise {
        std::function<double(double)> fn;
        std::string label;
    };

    static Gauge power_law(double coeff, double power, double logpower = 0.0);
    static Gauge constant(double c) { return power_law(c, 0.0); }
    static Gauge identity() { return power_law(1.0, 1.0); }
    static Gauge tabulated(std::vector<std::pair<double, double>> samples);
    static Gauge pointwise(std::function<double(double)> fn, std::string label);

    double operator()(double t) const;

    bool is_power_law() const;               ///< symbolic, any logpower
    bool is_pure_power_law() const;          ///< symbolic with logpower == 0
    const PowerLaw* power_terms() const;     ///< nullptr unless symbolic
    const Table* table() const;              ///< nullptr unless tabulated
    bool is_tabulated() const { return table() != nullptr; }

    /// d/dt, analytic for symbolic gauges, central difference otherwise.
    double derivative(double t) const;

    /// Nondecreasing (+1), nonincreasing (-1) near 0; 0 when undecidable.
    int monotone_direction() const;
    bool is_monotone_increasing() const { return monotone_direction() >= 0; }

    std::string describe() const;

private:
    std::variant<PowerLaw, Table, Composite, Pointwise> form_;
    explicit Gauge(std::variant<PowerLaw, Table, Composite, Pointwise> f) : form_(std::move(f)) {}
};

/// outer(inner(t)). Pure power laws compose symbolically (exponents multiply,
/// coefficient c_o * c_i^{p_o}); anything else yields a pointwise composite.
Gauge compose(const Gauge& outer, const Gauge& inner);

/// g*h and g/h; symbolic when both factors are (exponents add / subtract).
Gauge multiply(const Gauge& g, const Gauge& h);
Gauge divide(const Gauge& g, const Gauge& h);

/// True when both are symbolic and agree in (coeff, power, logpower) within rel_tol.
bool symbolically_equal(const Gauge& g, const Gauge& h, double rel_tol = 1e-12);

/// Class of g relative to h as t -> 0+. Symbolic pairs are decided exactly by
/// lexicographic comparison of (power, logpower); otherwise a dyadic-grid
/// trend fit with declared thresholds (slope +-0.05) decides, heuristically.
AsymptoticVerdict asymptotic_class(const Gauge& g, const Gauge& h);

// ------------------------------------------------------------------ //
// gamma-augury: integral t * F(C t) dgamma(t) / gamma(t)^2 over [0, 1)
// ------------------------------------------------------------------ //

struct AuguryCertificate {
    bool holds = false;
    bool heuristic = false;
    std::string detail;
};

/// Requires gamma monotone increasing. Symbolic pairs get the exact exponent
/// certificate (power-law rule: s - eta > -1, with the log(1/t) refinement on
/// the boundary); tabulated inputs get a numeric integrability probe over
/// [2^-40, 1) with dyadic-block divergence detection.
AuguryCertificate is_augury(const Gauge& F, const Gauge& gamma, double C = 1.0);

// ------------------------------------------------------------------ //
// constructive fortune decomposition
// ------------------------------------------------------------------ //

struct FortuneDecomposition {
    Gauge k;      ///< quotient gauge, k = F o lambda^-1
    Gauge lambda; ///< approach gauge, lambda(t) = min{F(t) t^2, t} near 0
};

/// F must be a pure power law c*t^s. Guarantees: lambda is O(t),
/// lambda(t)/(F(t) t^2) <= 1 near 0, and compose(k, lambda) == F exactly.
FortuneDecomposition decompose_fortune(const Gauge& F);

} // namespace nevlab
