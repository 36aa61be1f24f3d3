#pragma once

// Exact computation of sup P(X in V) for finite V over mutually independent
// tail-bounded coordinates, by enumerating candidate grids (products of
// coordinate projections of subsets of V, closed under the grid fixpoint
// G -> #0(G n V)) and measuring each with the matching shift operator.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/shift.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

using Point = std::vector<double>;

/// A finite target set V in R^n: deduplicated points of equal dimension.
struct PointSet {
    std::vector<Point> points;

    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }

    static PointSet of(std::vector<Point> pts) {
        if (pts.empty()) throw std::invalid_argument("PointSet: empty");
        const std::size_t n = pts.front().size();
        for (const Point& p : pts) {
            if (p.size() != n) {
                throw std::invalid_argument("PointSet: inconsistent dimension");
            }
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return PointSet{std::move(pts)};
    }
};

/// Optimal value, the maximizing grid, the split points (two-sided case
/// only), and the witness per-coordinate atom distributions.
struct SolveResult {
    double value = 0.0;
    Grid grid;
    std::optional<std::vector<double>> c;
    std::vector<std::vector<Atom>> witness;
};

namespace detail {

/// Points of V all of whose coordinates lie in the grid.
inline std::vector<Point> grid_cap(const Grid& g, const PointSet& v) {
    std::vector<Point> out;
    for (const Point& p : v.points) {
        bool inside = true;
        for (std::size_t k = 0; k < p.size() && inside; ++k) {
            inside = std::binary_search(g.coords[k].begin(), g.coords[k].end(), p[k]);
        }
        if (inside) out.push_back(p);
    }
    return out;
}

/// #0: product of coordinate projections, each joined with {0}.
inline Grid grid_hull(const std::vector<Point>& pts, std::size_t dim) {
    Grid g;
    g.coords.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        CoordSet c{0.0};
        for (const Point& p : pts) c.push_back(p[k]);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        g.coords[k] = std::move(c);
    }
    return g;
}

inline bool grid_less(const Grid& a, const Grid& b) {
    const std::size_t na = a.total_points(), nb = b.total_points();
    if (na != nb) return na < nb;
    return a.coords < b.coords;
}

}  // namespace detail

/// All grids of the form G = prod_k (pi_k(G n V) u {0}): seed each subset
/// W of V with prod_k (pi_k(W) u {0}) and iterate G -> #0(G n V) until the
/// fixpoint (the iteration only shrinks, so it terminates within |V| steps).
inline std::vector<Grid> candidate_grids(const PointSet& v, std::size_t cap = 16) {
    const std::size_t m = v.points.size();
    if (m > cap) {
        throw std::length_error(
            "candidate_grids: point count exceeds the subset-enumeration cap");
    }
    const std::size_t dim = v.dim();
    std::vector<Grid> grids;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<Point> subset;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::size_t{1} << i)) subset.push_back(v.points[i]);
        }
        Grid g = detail::grid_hull(subset, dim);
        for (;;) {
            Grid next = detail::grid_hull(detail::grid_cap(g, v), dim);
            if (next.coords == g.coords) break;
            g = std::move(next);
        }
        grids.push_back(std::move(g));
    }
    std::sort(grids.begin(), grids.end(),
              [](const Grid& a, const Grid& b) { return a.coords < b.coords; });
    grids.erase(std::unique(grids.begin(), grids.end(),
                            [](const Grid& a, const Grid& b) {
                                return a.coords == b.coords;
                            }),
                grids.end());
    return grids;
}

/// P(shift_abs(f, G) in V): the product-measure mass the absolute shift
/// places on V for this grid.
inline double measure_on_grid_abs(const std::vector<TailFn>& fs, const Grid& g,
                                  const PointSet& v) {
    if (fs.size() != v.dim() || g.coords.size() != v.dim()) {
        throw std::invalid_argument("measure_on_grid_abs: dimension mismatch");
    }
    std::vector<RadialRV> dists;
    dists.reserve(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k) {
        dists.push_back(shift_abs_atoms(fs[k], g.coords[k]));
    }
    double total = 0.0;
    for (const Point& p : detail::grid_cap(g, v)) {
        double prod = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            prod *= dists[k].mass_at(p[k]);
        }
        total += prod;
    }
    return total;
}

/// Sharpest bound sup P(X in V) for absolute tails: the maximum of
/// measure_on_grid_abs over all candidate grids. Ties break toward the grid
/// with fewer points, then lexicographically.
inline SolveResult solve_finite_abs(const std::vector<TailFn>& fs,
                                    const PointSet& v, std::size_t cap = 16) {
    for (const TailFn& f : fs) {
        require_valid(f, "solve_finite_abs");
        if (f.kind() != TailKind::Absolute) {
            throw std::invalid_argument("solve_finite_abs: needs absolute tails");
        }
    }
    SolveResult best;
    bool have = false;
    for (const Grid& g : candidate_grids(v, cap)) {
        const double val = measure_on_grid_abs(fs, g, v);
        const bool better = !have || val > best.value + kTolExact ||
                            (std::abs(val - best.value) <= kTolExact &&
                             detail::grid_less(g, best.grid));
        if (better) {
            best.value = val;
            best.grid = g;
            have = true;
        }
    }
    best.witness.clear();
    for (std::size_t k = 0; k < fs.size(); ++k) {
        best.witness.push_back(shift_abs_atoms(fs[k], best.grid.coords[k]).atoms);
    }
    return best;
}

/// Sharpest bound for two-sided tails: maximizes over candidate grids and,
/// per coordinate, over the finite split-point candidates
/// {0, 1} u {1 - plus(v) : v in G, v > 0} u {minus(v) : v in G, v < 0}
/// (the objective is piecewise linear in each split, with breakpoints
/// exactly at those values, so the finite search is exact).
inline SolveResult solve_finite_two(const std::vector<TwoTail>& fs,
                                    const PointSet& v, std::size_t cap = 16) {
    for (const TwoTail& tt : fs) require_valid(tt, "solve_finite_two");
    const std::size_t n = v.dim();
    if (fs.size() != n) {
        throw std::invalid_argument("solve_finite_two: dimension mismatch");
    }
    SolveResult best;
    bool have = false;
    for (const Grid& g : candidate_grids(v, cap)) {
        // Split-point candidates per coordinate.
        std::vector<std::vector<double>> cands(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double>& ck = cands[k];
            ck = {0.0, 1.0};
            for (double u : g.coords[k]) {
                if (u > 0.0) ck.push_back(1.0 - fs[k].plus(u));
                if (u < 0.0) ck.push_back(fs[k].minus(u));
            }
            for (double& x : ck) x = std::clamp(x, 0.0, 1.0);
            std::sort(ck.begin(), ck.end());
            ck.erase(std::unique(ck.begin(), ck.end()), ck.end());
        }
        // Odometer over the candidate product.
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            std::vector<double> c(n);
            std::vector<std::vector<Atom>> dists(n);
            for (std::size_t k = 0; k < n; ++k) {
                c[k] = cands[k][idx[k]];
                dists[k] = shift_two_atoms(fs[k], g.coords[k], c[k]);
            }
            double val = 0.0;
            for (const Point& p : detail::grid_cap(g, v)) {
                double prod = 1.0;
                for (std::size_t k = 0; k < n; ++k) {
                    double mass = 0.0;
                    for (const Atom& a : dists[k]) {
                        if (a.value == p[k]) mass = a.mass;
                    }
                    prod *= mass;
                }
                val += prod;
            }
            const bool better =
                !have || val > best.value + kTolExact ||
                (std::abs(val - best.value) <= kTolExact &&
                 detail::grid_less(g, best.grid));
            if (better) {
                best.value = val;
                best.grid = g;
                best.c = c;
                best.witness = dists;
                have = true;
            }
            // Advance the odometer.
            std::size_t k = 0;
            while (k < n && ++idx[k] == cands[k].size()) idx[k++] = 0;
            if (k == n) break;
        }
    }
    return best;
}

/// The closed form for the canonical two-point antichain target
/// V = {(a1,b1),(a2,b2)} with 0 <= a1 < a2 and 0 <= b2 < b1:
/// max of the single-point grids and the full grid.
inline double solve_example1(const TailFn& f1, const TailFn& f2, double a1,
                             double b1, double a2, double b2) {
    if (!(a1 >= 0.0 && a1 < a2 && b2 >= 0.0 && b2 < b1)) {
        throw std::invalid_argument(
            "solve_example1: requires 0 <= a1 < a2 and 0 <= b2 < b1");
    }
    const double p1 = f1(a1) * f2(b1);
    const double p2 = f1(a2) * f2(b2);
    const double p3 = p1 + p2 - 2.0 * f1(a2) * f2(b1);
    return std::max({p1, p2, p3});
}

}  // namespace tailbounds
