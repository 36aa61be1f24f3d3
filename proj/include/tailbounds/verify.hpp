#pragma once

// Independent oracles: feasibility checking of witness distributions,
// a coordinate-ascent lower-bound search for the independent problem, and
// exact convolution references for sums of largest quantiles.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/finite_solver.hpp"
#include "tailbounds/neat.hpp"
#include "tailbounds/shift.hpp"
#include "tailbounds/simplex.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

/// Check P(|X_k| >= t) <= f_k(t) for every coordinate's atom list, at every
/// atom magnitude and every tail breakpoint. Violations are returned as
/// data, not thrown.
inline std::vector<std::string> check_feasible_abs(
    const std::vector<std::vector<Atom>>& per_coord,
    const std::vector<TailFn>& fs, double tol = kTolExact) {
    std::vector<std::string> violations;
    if (per_coord.size() != fs.size()) {
        violations.push_back("dimension mismatch between atoms and tails");
        return violations;
    }
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const double eps =
            fs[k].transcendental() ? std::max(tol, kTolTranscendental) : tol;
        RadialRV rv{per_coord[k]};
        std::vector<double> probes;
        for (const Atom& a : per_coord[k]) probes.push_back(std::abs(a.value));
        for (double b : fs[k].breakpoints()) {
            if (b >= 0.0) probes.push_back(b);
        }
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
        for (double t : probes) {
            const double lhs = rv.rcdf_abs(t);
            const double rhs = fs[k](t);
            if (lhs > rhs + eps) {
                violations.push_back("coordinate " + std::to_string(k) +
                                     ": P(|X| >= " + std::to_string(t) + ") = " +
                                     std::to_string(lhs) + " exceeds " +
                                     std::to_string(rhs));
            }
        }
    }
    return violations;
}

struct BruteForceResult {
    double value = 0.0;
    std::vector<std::vector<Atom>> witness;
};

namespace detail {

/// Best feasible distribution on the given support values for one absolute
/// tail, maximizing a nonnegative per-value objective: an exact tiny LP.
inline std::vector<Atom> best_coordinate_masses(
    const TailFn& f, const std::vector<double>& support,
    const std::vector<double>& weights) {
    const std::size_t m = support.size();
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> thresholds;
    for (double v : support) thresholds.push_back(std::abs(v));
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    for (double t : thresholds) {
        std::vector<double> row(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (std::abs(support[j]) >= t) row[j] = 1.0;
        }
        a.push_back(std::move(row));
        b.push_back(f(t));
    }
    a.emplace_back(m, 1.0);
    b.push_back(1.0);
    const LpResult lp = simplex_maximize(a, b, weights);
    std::vector<Atom> atoms;
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (lp.x[j] > 0.0) atoms.push_back({support[j], lp.x[j]});
        total += lp.x[j];
    }
    // Park any slack at 0 so the masses form a distribution (0 is always in
    // the support and carries no binding constraint beyond total mass).
    if (total < 1.0) {
        bool found = false;
        for (Atom& at : atoms) {
            if (at.value == 0.0) {
                at.mass += 1.0 - total;
                found = true;
            }
        }
        if (!found) atoms.push_back({0.0, 1.0 - total});
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& p, const Atom& q) { return p.value < q.value; });
    return atoms;
}

inline double product_mass_on(const std::vector<std::vector<Atom>>& dists,
                              const PointSet& v) {
    double total = 0.0;
    for (const Point& p : v.points) {
        double prod = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            double mass = 0.0;
            for (const Atom& a : dists[k]) {
                if (a.value == p[k]) mass = a.mass;
            }
            prod *= mass;
        }
        total += prod;
    }
    return total;
}

}  // namespace detail

/// Multistart coordinate ascent over independent product distributions
/// supported on the coordinates of V (plus 0): each pass re-optimizes one
/// coordinate's masses exactly by LP while the others are held fixed. The
/// result is a certified feasible lower bound for sup P(X in V); the
/// underlying program is nonconvex, so it is evidence, not proof, of the
/// optimum.
inline BruteForceResult brute_force_independent(const std::vector<TailFn>& fs,
                                                const PointSet& v,
                                                std::size_t restarts,
                                                std::uint64_t seed) {
    const std::size_t n = v.dim();
    const std::size_t m = v.points.size();
    std::vector<std::vector<double>> supports(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double>& s = supports[k];
        s.push_back(0.0);
        for (const Point& p : v.points) s.push_back(p[k]);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    const CounterRng rng(seed);
    BruteForceResult best;
    std::uint64_t counter = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        // Random initial product distribution: the shift distribution of a
        // random subset's coordinate projections (always feasible).
        std::vector<std::vector<Atom>> dists(n);
        std::vector<Point> subset;
        for (std::size_t i = 0; i < m; ++i) {
            if (rng.word(counter++) & 1) subset.push_back(v.points[i]);
        }
        if (subset.empty()) subset.push_back(v.points[rng.word(counter++) % m]);
        for (std::size_t k = 0; k < n; ++k) {
            CoordSet g{0.0};
            for (const Point& p : subset) g.push_back(p[k]);
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            dists[k] = shift_abs_atoms(fs[k], g).atoms;
        }
        double value = detail::product_mass_on(dists, v);
        // Ascent sweeps until no coordinate improves.
        for (std::size_t sweep = 0; sweep < 100; ++sweep) {
            bool improved = false;
            for (std::size_t k = 0; k < n; ++k) {
                // Weight of each support value: mass V gains per unit mass
                // placed there, under the other coordinates' distributions.
                std::vector<double> weights(supports[k].size(), 0.0);
                for (const Point& p : v.points) {
                    double prod = 1.0;
                    for (std::size_t l = 0; l < n; ++l) {
                        if (l == k) continue;
                        double mass = 0.0;
                        for (const Atom& a : dists[l]) {
                            if (a.value == p[l]) mass = a.mass;
                        }
                        prod *= mass;
                    }
                    const auto it = std::lower_bound(supports[k].begin(),
                                                     supports[k].end(), p[k]);
                    weights[static_cast<std::size_t>(it - supports[k].begin())] +=
                        prod;
                }
                dists[k] = detail::best_coordinate_masses(fs[k], supports[k],
                                                          weights);
                const double next = detail::product_mass_on(dists, v);
                if (next > value + kTolExact) improved = true;
                value = next;
            }
            if (!improved) break;
        }
        if (value > best.value) {
            best.value = value;
            best.witness = dists;
        }
    }
    return best;
}

/// Exact P(X1~ + ... + Xn~ >= t) for right tails that admit exact
/// convolution: exponential families (Erlang / hypoexponential survival) and
/// step families (finite atom convolution). Mixing the two is unsupported.
inline double exact_sum_tail_oracle(const std::vector<TailFn>& fs, double t) {
    if (fs.empty()) throw std::invalid_argument("exact_sum_tail_oracle: no tails");
    bool all_exp = true, all_step = true;
    for (const TailFn& f : fs) {
        require_valid(f, "exact_sum_tail_oracle");
        if (f.kind() == TailKind::Left) {
            throw std::invalid_argument("exact_sum_tail_oracle: needs right tails");
        }
        all_exp = all_exp && f.family() == TailFamily::Exponential;
        all_step = all_step && f.family() == TailFamily::Step;
    }
    if (fs.size() == 1) return fs.front()(t);
    if (all_exp) {
        std::vector<double> rates;
        for (const TailFn& f : fs) rates.push_back(f.rate());
        std::sort(rates.begin(), rates.end());
        const bool all_equal = rates.front() == rates.back();
        const bool all_distinct =
            std::adjacent_find(rates.begin(), rates.end()) == rates.end();
        if (t <= 0.0) return 1.0;
        if (all_equal) {
            // Erlang(n, rate) survival.
            const double lam = rates.front();
            double term = 1.0, sum = 0.0;
            for (std::size_t k = 0; k < rates.size(); ++k) {
                sum += term;
                term *= lam * t / static_cast<double>(k + 1);
            }
            return std::exp(-lam * t) * sum;
        }
        if (all_distinct) {
            // Hypoexponential survival: sum_i c_i e^{-l_i t},
            // c_i = prod_{j != i} l_j / (l_j - l_i).
            double sum = 0.0;
            for (std::size_t i = 0; i < rates.size(); ++i) {
                double c = 1.0;
                for (std::size_t j = 0; j < rates.size(); ++j) {
                    if (j != i) c *= rates[j] / (rates[j] - rates[i]);
                }
                sum += c * std::exp(-rates[i] * t);
            }
            return std::min(1.0, std::max(0.0, sum));
        }
        throw std::invalid_argument(
            "exact_sum_tail_oracle: repeated-but-not-identical rates unsupported");
    }
    if (all_step) {
        // Convolve the discrete largest-quantile atom lists.
        std::vector<Atom> acc{{0.0, 1.0}};
        for (const TailFn& f : fs) {
            std::vector<Atom> cur;
            const auto& b = f.breaks();
            for (std::size_t i = 0; i < b.size(); ++i) {
                const double above = (i + 1 < b.size()) ? f(b[i + 1]) : 0.0;
                const double mass = f(b[i]) - above;
                if (mass > 0.0) cur.push_back({b[i], mass});
            }
            const double res = 1.0 - f(b.front());
            if (res > 0.0) {
                throw std::invalid_argument(
                    "exact_sum_tail_oracle: step tail must reach 1 at its first "
                    "breakpoint");
            }
            std::vector<Atom> next;
            for (const Atom& x : acc) {
                for (const Atom& y : cur) {
                    next.push_back({x.value + y.value, x.mass * y.mass});
                }
            }
            std::sort(next.begin(), next.end(),
                      [](const Atom& p, const Atom& q) { return p.value < q.value; });
            acc.clear();
            for (const Atom& x : next) {
                if (!acc.empty() && acc.back().value == x.value) {
                    acc.back().mass += x.mass;
                } else {
                    acc.push_back(x);
                }
            }
        }
        double total = 0.0;
        for (const Atom& x : acc) {
            if (x.value >= t) total += x.mass;
        }
        return total;
    }
    throw std::invalid_argument(
        "exact_sum_tail_oracle: unsupported family combination");
}

}  // namespace tailbounds
