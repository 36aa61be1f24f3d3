#pragma once

// Sharpest bounds when the coordinates may be dependent: the componentwise
// absolute-value reduction, the southwest (componentwise-minimal) boundary,
// a linear-programming solver for finite targets, and the exact
// two-dimensional closed form.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/finite_solver.hpp"
#include "tailbounds/simplex.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

/// Componentwise absolute value, deduplicated.
inline PointSet q_map(const PointSet& v) {
    std::vector<Point> pts = v.points;
    for (Point& p : pts) {
        for (double& x : p) x = std::abs(x);
    }
    return PointSet::of(std::move(pts));
}

/// The componentwise-minimal elements of a nonnegative point set: p is kept
/// iff no other point is <= p in every coordinate.
inline PointSet sw_boundary(const PointSet& v) {
    for (const Point& p : v.points) {
        for (double x : p) {
            if (x < 0.0) {
                throw std::invalid_argument(
                    "sw_boundary: needs nonnegative coordinates");
            }
        }
    }
    const auto leq = [](const Point& a, const Point& b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > b[k]) return false;
        }
        return true;
    };
    std::vector<Point> keep;
    for (const Point& p : v.points) {
        bool minimal = true;
        for (const Point& q : v.points) {
            if (q != p && leq(q, p)) {
                minimal = false;
                break;
            }
        }
        if (minimal) keep.push_back(p);
    }
    return PointSet::of(std::move(keep));
}

/// The dependence-free reduction of the target set: the southwest boundary
/// of its componentwise absolute values. Preserves the dependent optimum.
inline PointSet sw_reduce(const PointSet& v) { return sw_boundary(q_map(v)); }

struct DepResult {
    double value = 0.0;
    std::vector<double> masses;  // one per point of v, in order
};

/// sup m(V) over all joint distributions whose coordinate magnitudes obey
/// the absolute tails: a linear program with one mass variable per point,
/// a tail constraint per (coordinate, point-magnitude threshold), and a
/// total-mass constraint.
inline DepResult solve_dep_lp(const std::vector<TailFn>& fs, const PointSet& v,
                              std::size_t cap = 64) {
    const std::size_t n = v.dim();
    const std::size_t m = v.points.size();
    if (fs.size() != n) {
        throw std::invalid_argument("solve_dep_lp: dimension mismatch");
    }
    if (m > cap) {
        throw std::length_error("solve_dep_lp: point count exceeds the cap");
    }
    for (const TailFn& f : fs) {
        require_valid(f, "solve_dep_lp");
        if (f.kind() != TailKind::Absolute) {
            throw std::invalid_argument("solve_dep_lp: needs absolute tails");
        }
    }
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> thresholds;
        for (const Point& p : v.points) thresholds.push_back(std::abs(p[k]));
        std::sort(thresholds.begin(), thresholds.end());
        thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                         thresholds.end());
        for (double t : thresholds) {
            std::vector<double> row(m, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                if (std::abs(v.points[j][k]) >= t) row[j] = 1.0;
            }
            a.push_back(std::move(row));
            b.push_back(fs[k](t));
        }
    }
    a.emplace_back(m, 1.0);  // total mass
    b.push_back(1.0);
    const LpResult lp = simplex_maximize(a, b, std::vector<double>(m, 1.0));
    return DepResult{lp.value, lp.x};
}

/// The exact two-dimensional closed form (f1 must come from a continuous
/// family). With B the southwest boundary of Q(V) and W its first-coordinate
/// projection: the bound is the minimum of f1 at the smallest W point, the
/// boundary sums f1(next W point) + f2(height at t) over interior W points,
/// and f2 at the height over the largest W point.
inline double solve_dep_2d(const TailFn& f1, const TailFn& f2,
                           const PointSet& v) {
    if (v.dim() != 2) {
        throw std::invalid_argument("solve_dep_2d: needs two dimensions");
    }
    for (const TailFn* f : {&f1, &f2}) {
        require_valid(*f, "solve_dep_2d");
        if (f->kind() != TailKind::Absolute) {
            throw std::invalid_argument("solve_dep_2d: needs absolute tails");
        }
    }
    if (f1.family() == TailFamily::Step || f1.family() == TailFamily::SumMin) {
        throw std::invalid_argument(
            "solve_dep_2d: the first tail must be from a continuous family");
    }
    const PointSet q = q_map(v);
    for (const Point& p : q.points) {
        if (p[0] == 0.0 && p[1] == 0.0) {
            throw std::invalid_argument("solve_dep_2d: target contains the origin");
        }
    }
    const PointSet boundary = sw_boundary(q);
    std::vector<double> w;
    for (const Point& p : boundary.points) w.push_back(p[0]);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    // Height above t: the least second coordinate among Q(V) points at t.
    const auto h2 = [&](double t) {
        double best = kInf;
        for (const Point& p : q.points) {
            if (p[0] == t) best = std::min(best, p[1]);
        }
        return best;
    };
    double result = f1(w.front());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        result = std::min(result, f1(w[i + 1]) + f2(h2(w[i])));
    }
    result = std::min(result, f2(h2(w.back())));
    return result;
}

}  // namespace tailbounds
