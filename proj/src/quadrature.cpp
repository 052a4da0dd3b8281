#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "nevlab/errors.hpp"

namespace nevlab {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; symmetric).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,  0.1903505780647854,  0.2044329400752989, 0.2094821410847278};
// Gauss-7 weights aligned with odd Kronrod nodes (indices 1, 3, 5, 7).
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
};

template <class T>
Panel<T> eval_panel(const std::function<T(double)>& f, double a, double b) {
    double h = 0.5 * (b - a);
    double c = 0.5 * (a + b);
    T gk{};
    T g7{};
    for (int i = 0; i < 8; ++i) {
        T fv;
        if (i == 7) {
            fv = f(c);
            gk += kWgk[7] * fv;
            g7 += kWg[3] * fv;
        } else {
            T f1 = f(c - h * kXgk[i]);
            T f2 = f(c + h * kXgk[i]);
            gk += kWgk[i] * (f1 + f2);
            if (i % 2 == 1) g7 += kWg[i / 2] * (f1 + f2);
        }
    }
    Panel<T> p;
    p.a = a;
    p.b = b;
    p.value = h * gk;
    p.error = std::abs(h * (gk - g7));
    return p;
}

template <class T>
QuadResult<T> integrate_impl(const std::function<T(double)>& f, double a, double b,
                             const QuadOptions& opt, std::span<const double> presplit) {
    QuadResult<T> res;
    if (!(b > a)) {
        res.converged = true;
        return res;
    }

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double p : presplit)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

    T total{};
    double total_err = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel<T> p = eval_panel(f, cuts[i], cuts[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
        ++panels;
    }

    auto tolerance = [&]() { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (!heap.empty() && total_err > tolerance() && panels < opt.max_panels) {
        Panel<T> worst = heap.top();
        // panel estimates at the noise floor cannot be improved by splitting
        if (worst.error <= opt.noise_floor * std::abs(total)) break;
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) continue; // width at rounding limit
        Panel<T> left = eval_panel(f, worst.a, mid);
        Panel<T> right = eval_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    res.value = total;
    res.error = total_err;
    res.panels = panels;
    res.converged = total_err <= std::max(tolerance(), 2.0 * opt.noise_floor * std::abs(total));
    if (!res.converged && opt.throw_on_failure) {
        double partial;
        if constexpr (std::is_same_v<T, double>)
            partial = total;
        else
            partial = std::abs(total);
        throw NumericError("adaptive quadrature did not converge within the panel budget", partial);
    }
    return res;
}

} // namespace

QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt, std::span<const double> presplit) {
    return integrate_impl<double>(f, a, b, opt, presplit);
}

QuadResult<cdouble> integrate_complex(const std::function<cdouble(double)>& f, double a, double b,
                                      const QuadOptions& opt, std::span<const double> presplit) {
    return integrate_impl<cdouble>(f, a, b, opt, presplit);
}

} // namespace nevlab
