#include "selfsim_internal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "nevlab/errors.hpp"

namespace nevlab::detail {

namespace {

// Binomial coefficients up to n = 4.
constexpr double kChoose[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1},
};

struct Cell {
    double scale, shift; ///< the cell is the image of the attractor under t -> scale*t + shift
    double mass;
    int depth;
};

} // namespace

SelfSimStats selfsim_stats(const Measure::SelfSimilar& c) {
    // Raw moments of the unit-mass fixed point satisfy, for k >= 1,
    //   M_k (1 - sum_i w_i r_i^k) = sum_i w_i sum_{j<k} C(k,j) r_i^j o_i^{k-j} M_j.
    double M[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 1; k <= 4; ++k) {
        double shrink = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < c.maps.size(); ++i) {
            double r = c.maps[i].ratio, o = c.maps[i].offset, w = c.weights[i];
            shrink += w * std::pow(r, k);
            for (int j = 0; j < k; ++j)
                rhs += w * kChoose[k][j] * std::pow(r, j) * std::pow(o, k - j) * M[j];
        }
        M[k] = rhs / (1.0 - shrink);
    }
    SelfSimStats st;
    st.mean = M[1];
    st.c2 = M[2] - M[1] * M[1];
    st.c3 = M[3] - 3.0 * M[1] * M[2] + 2.0 * std::pow(M[1], 3);
    st.c4 = M[4] - 4.0 * M[1] * M[3] + 6.0 * M[1] * M[1] * M[2] - 3.0 * std::pow(M[1], 4);
    st.c2 = std::max(st.c2, 0.0);
    st.c4 = std::max(st.c4, 0.0);

    // Attractor hull: the fixed point of L -> min_i (r_i L + o_i) and its mirror.
    double lo = st.mean, hi = st.mean;
    for (int it = 0; it < 300; ++it) {
        double nlo = kDivergent, nhi = -kDivergent;
        for (const auto& m : c.maps) {
            nlo = std::min(nlo, m.ratio * lo + m.offset);
            nhi = std::max(nhi, m.ratio * hi + m.offset);
        }
        if (std::abs(nlo - lo) + std::abs(nhi - hi) <=
            1e-16 * (1.0 + std::abs(nlo) + std::abs(nhi))) {
            lo = nlo;
            hi = nhi;
            break;
        }
        lo = nlo;
        hi = nhi;
    }
    st.hull_lo = lo;
    st.hull_hi = hi;
    return st;
}

double selfsim_window_mass(const Measure::SelfSimilar& c, double lo, double hi, double tol) {
    if (hi <= lo) return 0.0;
    const SelfSimStats st = selfsim_stats(c);
    tol = std::max(tol, 1e-16 * c.total);
    double mass = 0.0;
    std::vector<Cell> stack{{1.0, 0.0, c.total, 0}};
    while (!stack.empty()) {
        Cell cell = stack.back();
        stack.pop_back();
        double clo = cell.scale * st.hull_lo + cell.shift;
        double chi = cell.scale * st.hull_hi + cell.shift;
        if (chi < lo || clo > hi) continue;
        if (clo >= lo && chi <= hi) {
            mass += cell.mass;
            continue;
        }
        if (cell.mass <= tol / 16.0 || cell.depth >= 200) {
            mass += 0.5 * cell.mass; // unresolved boundary cell: even split
            continue;
        }
        for (std::size_t i = 0; i < c.maps.size(); ++i)
            stack.push_back({cell.scale * c.maps[i].ratio,
                             cell.scale * c.maps[i].offset + cell.shift,
                             cell.mass * c.weights[i], cell.depth + 1});
    }
    return mass;
}

namespace {

struct EvaluatedCell {
    double scale, shift, mass;
    int depth;
    cdouble est;
    double err;
};

struct WorstErrFirst {
    bool operator()(const EvaluatedCell& a, const EvaluatedCell& b) const {
        return a.err < b.err;
    }
};

EvaluatedCell evaluate_cell(const SelfSimStats& st, const CellKernel& k, double scale,
                            double shift, double mass, int depth) {
    double centroid = scale * st.mean + shift;
    double s2 = scale * scale;
    double clo = scale * st.hull_lo + shift;
    double chi = scale * st.hull_hi + shift;
    cdouble est = mass * (k.value(centroid) + (s2 * st.c2 / 2.0) * k.d2(centroid) +
                          (s2 * scale * st.c3 / 6.0) * k.d3(centroid));
    double err = mass * (s2 * s2 * st.c4) / 24.0 * k.bound4(clo, chi);
    return {scale, shift, mass, depth, est, err};
}

} // namespace

CellIntegral selfsim_integrate(const Measure::SelfSimilar& c, const CellKernel& k, double rtol) {
    const SelfSimStats st = selfsim_stats(c);

    // Adaptive refinement driven by the leaf-error total relative to the running
    // estimate: split the worst leaf until the summed fourth-order remainder
    // bounds drop below rtol * |estimate|.  No a-priori magnitude guess is
    // needed, which matters when the kernel peak dwarfs its average.
    std::vector<EvaluatedCell> leaves{evaluate_cell(st, k, 1.0, 0.0, c.total, 0)};
    cdouble live_total = leaves.front().est;
    double live_err = leaves.front().err;
    cdouble frozen_total = 0.0; // leaves at the depth cap: unrefinable, tallied apart
    double frozen_err = 0.0;
    const WorstErrFirst worse{};

    // The incremental +/- updates of the live sums drift by ulps of the
    // largest term ever folded in.  A kernel pole close to the hull makes the
    // early remainder bounds astronomically larger than the final one, so the
    // drift can both pin the tracked error above the target forever and, just
    // as fatally, push it below the target while the true error is orders of
    // magnitude larger.  The incremental values are therefore only a hint:
    // whenever they suggest stopping (and at geometrically spaced checkpoints
    // regardless), rebuild both sums exactly from the live leaves and decide
    // on the rebuilt values alone.  Each rebuild also resets the trackers, so
    // stale noise cannot re-trigger the test for free.
    long cells_visited = 1;
    long next_resum = 16;
    while (!leaves.empty()) {
        double tol = rtol * std::max(std::abs(live_total + frozen_total), 1e-250);
        if (live_err + frozen_err <= tol || frozen_err >= tol || cells_visited >= next_resum) {
            live_total = 0.0;
            live_err = 0.0;
            for (const EvaluatedCell& e : leaves) {
                live_total += e.est;
                live_err += e.err;
            }
            next_resum = cells_visited * 2;
            tol = rtol * std::max(std::abs(live_total + frozen_total), 1e-250);
            if (live_err + frozen_err <= tol) break;
            if (frozen_err >= tol) break; // the unrefinable part alone exceeds the target
        }
        std::pop_heap(leaves.begin(), leaves.end(), worse);
        EvaluatedCell cell = leaves.back();
        leaves.pop_back();
        live_total -= cell.est;
        live_err -= cell.err;
        if (cell.depth >= 120) {
            frozen_total += cell.est;
            frozen_err += cell.err;
            continue;
        }
        for (std::size_t i = 0; i < c.maps.size(); ++i) {
            EvaluatedCell child = evaluate_cell(st, k, cell.scale * c.maps[i].ratio,
                                                cell.scale * c.maps[i].offset + cell.shift,
                                                cell.mass * c.weights[i], cell.depth + 1);
            live_total += child.est;
            live_err += child.err;
            leaves.push_back(child);
            std::push_heap(leaves.begin(), leaves.end(), worse);
            ++cells_visited;
        }
        if (cells_visited > 5'000'000)
            throw NumericError("self-similar integration exceeded the cell budget",
                               std::abs(live_total + frozen_total));
    }
    // Report drift-free sums: the break paths just rebuilt them, but the
    // loop can also end by exhausting the leaves into the frozen tally.
    live_total = 0.0;
    live_err = 0.0;
    for (const EvaluatedCell& e : leaves) {
        live_total += e.est;
        live_err += e.err;
    }
    return {live_total + frozen_total, live_err + frozen_err};
}

// ---------------------------------------------------------------- //
// cached Poisson evaluation
// ---------------------------------------------------------------- //

namespace {

constexpr int kTreeDepthCap = 120;

double dist_to_interval(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

/// Cell geometry is independent of the evaluation point, so one lazily
/// expanded tree serves every abscissa of a window quadrature at fixed height.
struct SelfSimTree {
    std::uint64_t host_id = 0;
    std::size_t comp_index = 0;
    double y = 0.0;
    std::uint64_t last_used = 0;

    Measure::SelfSimilar comp; ///< owned copy: outlives the source measure
    SelfSimStats st;

    struct Node {
        double scale, shift, mass;
        std::int32_t child0 = -1; ///< children are contiguous; -1 = unexpanded
        std::int32_t depth = 0;
    };
    std::vector<Node> nodes;

    /// Children of node i, expanding them on first use.  Child geometry is a
    /// fixed function of the parent's, so values never depend on which
    /// evaluation forced the expansion.
    std::int32_t children(std::int32_t i) {
        if (nodes[i].child0 >= 0) return nodes[i].child0;
        const Node parent = nodes[i]; // copy: push_back may reallocate
        auto c0 = static_cast<std::int32_t>(nodes.size());
        for (std::size_t m = 0; m < comp.maps.size(); ++m)
            nodes.push_back({parent.scale * comp.maps[m].ratio,
                             parent.scale * comp.maps[m].offset + parent.shift,
                             parent.mass * comp.weights[m], -1, parent.depth + 1});
        nodes[i].child0 = c0;
        return c0;
    }
};

thread_local std::vector<std::unique_ptr<SelfSimTree>> g_poisson_trees;
thread_local std::uint64_t g_poisson_clock = 0;

SelfSimTree& poisson_tree(std::uint64_t host_id, std::size_t comp_index,
                          const Measure::SelfSimilar& c, double y) {
    for (auto& t : g_poisson_trees)
        if (t->host_id == host_id && t->comp_index == comp_index && t->y == y) {
            t->last_used = ++g_poisson_clock;
            return *t;
        }
    if (g_poisson_trees.size() >= 16) {
        auto oldest = std::min_element(g_poisson_trees.begin(), g_poisson_trees.end(),
                                       [](const auto& a, const auto& b) {
                                           return a->last_used < b->last_used;
                                       });
        g_poisson_trees.erase(oldest);
    }
    auto tree = std::make_unique<SelfSimTree>();
    tree->host_id = host_id;
    tree->comp_index = comp_index;
    tree->y = y;
    tree->last_used = ++g_poisson_clock;
    tree->comp = c;
    tree->st = selfsim_stats(c);
    tree->nodes.reserve(1024);
    tree->nodes.push_back({1.0, 0.0, c.total, -1, 0});
    g_poisson_trees.push_back(std::move(tree));
    return *g_poisson_trees.back();
}

/// Third-order moment estimate of the cell's Poisson mass at x + iy.
double poisson_cell_estimate(const SelfSimTree::Node& n, const SelfSimStats& st, double x,
                             double y) {
    double centroid = n.scale * st.mean + n.shift;
    cdouble pw[4];
    inverse_powers(cdouble(centroid - x, -y), pw);
    double s2 = n.scale * n.scale;
    return n.mass * (std::imag(pw[0]) + (s2 * st.c2) * std::imag(pw[2]) -
                     (s2 * n.scale * st.c3) * std::imag(pw[3]));
}

} // namespace

double selfsim_poisson_cached(std::uint64_t host_id, std::size_t comp_index,
                              const Measure::SelfSimilar& c, double x, double y, double rtol) {
    SelfSimTree& tree = poisson_tree(host_id, comp_index, c, y);
    const SelfSimStats& st = tree.st;
    const double hull_span = st.hull_hi - st.hull_lo;

    // Pass 1: a geometric Whitney walk (cells small next to their distance
    // from x) pins the integral's magnitude to a few permille, which turns
    // the caller's relative target into an absolute budget for pass 2.
    std::vector<std::int32_t> stack;
    stack.reserve(64);
    stack.push_back(0);
    double est1 = 0.0;
    while (!stack.empty()) {
        std::int32_t i = stack.back();
        stack.pop_back();
        const SelfSimTree::Node n = tree.nodes[i]; // copy: expansion reallocates
        double clo = n.scale * st.hull_lo + n.shift;
        double chi = n.scale * st.hull_hi + n.shift;
        double u = dist_to_interval(x, clo, chi);
        if (n.scale * hull_span <= 0.25 * std::max(u, y) || n.depth >= kTreeDepthCap) {
            est1 += poisson_cell_estimate(n, st, x, y);
            continue;
        }
        std::int32_t c0 = tree.children(i);
        for (std::size_t m = 0; m < tree.comp.maps.size(); ++m)
            stack.push_back(c0 + static_cast<std::int32_t>(m));
    }

    // Pass 2: accept a cell once its rigorous fourth-order remainder fits
    // either half of the budget: the mass-proportional share of an absolute
    // half (cheap for the far field, whose remainders vanish at coarse
    // spans), or half of rtol relative to the cell's own contribution (the
    // near field, where a few cells carry most of the integral).  The kernel
    // is positive, so the per-cell relative acceptances also sum to at most
    // half of rtol times the whole integral.
    const double half = 0.5 * rtol;
    const double mass_accept = half * std::max(est1, 1e-300) / std::max(c.total, 1e-300);
    double est2 = 0.0;
    stack.push_back(0);
    while (!stack.empty()) {
        std::int32_t i = stack.back();
        stack.pop_back();
        const SelfSimTree::Node n = tree.nodes[i];
        double clo = n.scale * st.hull_lo + n.shift;
        double chi = n.scale * st.hull_hi + n.shift;
        double u = dist_to_interval(x, clo, chi);
        double s2 = n.scale * n.scale;
        double d = std::hypot(u, y);
        double d5 = d * d;
        d5 = d5 * d5 * d;
        double pole5 = u > 5.0 * y ? 5.0 * y / (u * d5) : 1.0 / d5; // sup |Im w^-5| bound
        double rem_per_mass = s2 * s2 * st.c4 * pole5;
        if (rem_per_mass <= mass_accept || n.depth >= kTreeDepthCap) {
            est2 += poisson_cell_estimate(n, st, x, y);
            continue;
        }
        double est_node = poisson_cell_estimate(n, st, x, y);
        if (n.mass * rem_per_mass <= half * est_node) {
            est2 += est_node;
            continue;
        }
        std::int32_t c0 = tree.children(i);
        for (std::size_t m = 0; m < tree.comp.maps.size(); ++m)
            stack.push_back(c0 + static_cast<std::int32_t>(m));
    }
    return est2;
}

} // namespace nevlab::detail
