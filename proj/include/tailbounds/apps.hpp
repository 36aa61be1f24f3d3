#pragma once

// Applications of the largest-quantile construction: closed-form Gaussian
// sums, Monte Carlo / interval estimates for monotone functions of
// independent tail-bounded coordinates, Schur-multiplier traces, and the
// exact one-dimensional continuous-function bound.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/neat.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

// ---------------------------------------------------------------------------
// Gaussian sums
// ---------------------------------------------------------------------------

struct GaussianSpec {
    std::vector<double> mus;
    std::vector<double> sigmas;
};

/// The sharpest right tail for a sum of independent Gaussians:
/// (1/2)[1 + erf((mu - t) / (sqrt(2) sigma))] with mu the sum of means and
/// sigma^2 the sum of variances.
inline double gaussian_sum_sharp_tail(const GaussianSpec& spec, double t) {
    if (spec.mus.size() != spec.sigmas.size() || spec.mus.empty()) {
        throw std::invalid_argument("gaussian_sum_sharp_tail: bad spec");
    }
    double mu = 0.0, var = 0.0;
    for (std::size_t i = 0; i < spec.mus.size(); ++i) {
        if (!(spec.sigmas[i] > 0.0)) {
            throw std::invalid_argument("gaussian_sum_sharp_tail: sigma must be > 0");
        }
        mu += spec.mus[i];
        var += spec.sigmas[i] * spec.sigmas[i];
    }
    return 0.5 * (1.0 + std::erf((mu - t) / (std::sqrt(2.0 * var))));
}

// ---------------------------------------------------------------------------
// Monotone functions of the per-coordinate largest quantiles
// ---------------------------------------------------------------------------

/// A user-supplied function declared componentwise nondecreasing. The
/// declaration is a contract; universal verification is impossible for a
/// black box, so callers may additionally spot-check random dominated pairs.
struct MonotoneFn {
    std::function<double(const std::vector<double>&)> fn;
    bool declared_nondecreasing = false;
};

struct TailEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;  // Monte Carlo standard error (mc mode)
    double lower = 0.0;    // bracketing interval (grid mode)
    double upper = 0.0;
};

namespace detail {

/// Shared evaluator: P(g(X1~,...,Xn~) >= t) by Monte Carlo.
inline TailEstimate monotone_tail_mc(const MonotoneFn& g,
                                     const std::vector<NeatRV>& xs, double t,
                                     std::size_t samples, std::uint64_t seed) {
    const std::size_t n = xs.size();
    const CounterRng rng(seed);
    std::vector<double> x(n);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = xs[k].quantile(rng.uniform(i * n + k));
        }
        if (g.fn(x) >= t) ++hits;
    }
    TailEstimate out;
    out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) /
                            static_cast<double>(samples));
    out.lower = out.estimate - out.stderr_;
    out.upper = out.estimate + out.stderr_;
    return out;
}

/// Shared evaluator: a certified bracket by tensor-grid cell classification.
/// Each coordinate's (0,1) axis is split into `resolution` cells; since
/// g composed with nondecreasing quantiles is nondecreasing in each s, a
/// cell counts fully when g at its lower corner reaches t and not at all
/// when g at its upper corner stays below t; remaining cells are the bracket
/// width. Boundary cells touching s = 0 or s = 1 are treated as undecided on
/// the open side.
inline TailEstimate monotone_tail_grid(const MonotoneFn& g,
                                       const std::vector<NeatRV>& xs, double t,
                                       std::size_t resolution) {
    const std::size_t n = xs.size();
    const std::size_t r = resolution;
    // Quantiles at the r+1 cell edges; the extreme edges are open.
    std::vector<std::vector<double>> q(n, std::vector<double>(r + 1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 1; i < r; ++i) {
            q[k][i] = xs[k].quantile(static_cast<double>(i) / static_cast<double>(r));
        }
        q[k][0] = -kInf;
        q[k][r] = kInf;
    }
    double certain = 0.0, undecided = 0.0;
    const double cell = 1.0;  // cell count; normalized at the end
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> lo(n), hi(n);
    std::size_t cells_certain = 0, cells_undecided = 0;
    for (;;) {
        bool lo_finite = true, hi_finite = true;
        for (std::size_t k = 0; k < n; ++k) {
            lo[k] = q[k][idx[k]];
            hi[k] = q[k][idx[k] + 1];
            lo_finite = lo_finite && idx[k] > 0;
            hi_finite = hi_finite && idx[k] + 1 < r;
        }
        if (lo_finite && g.fn(lo) >= t) {
            ++cells_certain;
        } else if (hi_finite && g.fn(hi) < t) {
            // certainly below t: contributes nothing
        } else {
            ++cells_undecided;
        }
        std::size_t k = 0;
        while (k < n && ++idx[k] == r) idx[k++] = 0;
        if (k == n) break;
    }
    (void)cell;
    const double vol = std::pow(static_cast<double>(r), -static_cast<double>(n));
    certain = static_cast<double>(cells_certain) * vol;
    undecided = static_cast<double>(cells_undecided) * vol;
    TailEstimate out;
    out.lower = certain;
    out.upper = certain + undecided;
    out.estimate = 0.5 * (out.lower + out.upper);
    return out;
}

}  // namespace detail

/// Estimate P(g(X1~,...,Xn~) >= t) for declared-monotone g over right tails:
/// the sharpest bound for P(g(X) >= t) over all independent X obeying the
/// tails. Monte Carlo mode returns estimate +/- standard error.
inline TailEstimate monotone_sharp_tail_mc(const MonotoneFn& g,
                                           const std::vector<TailFn>& fs,
                                           double t, std::size_t samples,
                                           std::uint64_t seed) {
    if (!g.declared_nondecreasing) {
        throw std::invalid_argument(
            "monotone_sharp_tail: g must be declared componentwise nondecreasing");
    }
    std::vector<NeatRV> xs;
    for (const TailFn& f : fs) xs.push_back(xtilde(f));
    return detail::monotone_tail_mc(g, xs, t, samples, seed);
}

/// Grid mode: returns a certified [lower, upper] bracket of the same value.
inline TailEstimate monotone_sharp_tail_grid(const MonotoneFn& g,
                                             const std::vector<TailFn>& fs,
                                             double t, std::size_t resolution) {
    if (!g.declared_nondecreasing) {
        throw std::invalid_argument(
            "monotone_sharp_tail: g must be declared componentwise nondecreasing");
    }
    std::vector<NeatRV> xs;
    for (const TailFn& f : fs) xs.push_back(xtilde(f));
    return detail::monotone_tail_grid(g, xs, t, resolution);
}

/// The absolute-tail variant for functions that are nondecreasing on the
/// nonnegative orthant and satisfy g(x) <= g(|x|): spot-checks both declared
/// properties on `spot_checks` random pairs (a necessary filter only), then
/// evaluates against the extended absolute tails.
inline TailEstimate positive_multinomial_sharp_tail_mc(
    const MonotoneFn& g, const std::vector<TailFn>& fs, double t,
    std::size_t samples, std::uint64_t seed, std::size_t spot_checks = 1000) {
    const std::size_t n = fs.size();
    for (const TailFn& f : fs) {
        require_valid(f, "positive_multinomial_sharp_tail");
        if (f.kind() != TailKind::Absolute) {
            throw std::invalid_argument(
                "positive_multinomial_sharp_tail: needs absolute tails");
        }
    }
    if (!g.declared_nondecreasing) {
        throw std::invalid_argument(
            "positive_multinomial_sharp_tail: g must be declared monotone on the "
            "nonnegative orthant");
    }
    const CounterRng rng(seed ^ 0xABCDEF0123456789ULL);
    std::vector<double> x(n), y(n), ax(n);
    for (std::size_t i = 0; i < spot_checks; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = 10.0 * rng.uniform(i * (2 * n) + 2 * k);
            y[k] = x[k] + 10.0 * rng.uniform(i * (2 * n) + 2 * k + 1);
            ax[k] = (rng.word(i * (2 * n) + 2 * k) & 1) ? x[k] : -x[k];
        }
        if (g.fn(x) > g.fn(y) + kTolExact) {
            throw std::invalid_argument(
                "positive_multinomial_sharp_tail: spot check found a "
                "monotonicity violation on the nonnegative orthant");
        }
        std::vector<double> mag(n);
        for (std::size_t k = 0; k < n; ++k) mag[k] = std::abs(ax[k]);
        if (g.fn(ax) > g.fn(mag) + kTolExact) {
            throw std::invalid_argument(
                "positive_multinomial_sharp_tail: spot check found "
                "g(x) > g(|x|)");
        }
    }
    std::vector<NeatRV> xs;
    for (const TailFn& f : fs) xs.push_back(xtilde(f));
    return detail::monotone_tail_mc(g, xs, t, samples, seed);
}

// ---------------------------------------------------------------------------
// Schur multipliers
// ---------------------------------------------------------------------------

/// A (d+1)-index coefficient tensor defining a d-linear matrix map; entries
/// are stored flat in lexicographic index order, each index in [0, n).
struct SchurTensor {
    std::size_t d = 1;
    std::size_t n = 1;
    std::vector<double> entries;

    double at(const std::vector<std::size_t>& j) const {
        std::size_t flat = 0;
        for (std::size_t idx : j) flat = flat * n + idx;
        return entries[flat];
    }

    void check() const {
        std::size_t expect = 1;
        for (std::size_t i = 0; i <= d; ++i) expect *= n;
        if (entries.size() != expect) {
            throw std::invalid_argument("SchurTensor: entry count mismatch");
        }
    }
};

/// The d-linear Schur multiplier: entry (j1, j_{d+1}) of the output is
/// sum over j2..jd of m[j1..j_{d+1}] x1[j1][j2] ... xd[jd][j_{d+1}].
/// Summation order is fixed lexicographically in (j1,...,j_{d+1}).
inline std::vector<std::vector<double>> schur_multiply(
    const SchurTensor& m,
    const std::vector<std::vector<std::vector<double>>>& mats) {
    m.check();
    if (mats.size() != m.d) {
        throw std::invalid_argument("schur_multiply: need d matrices");
    }
    for (const auto& mat : mats) {
        if (mat.size() != m.n) {
            throw std::invalid_argument("schur_multiply: matrix size mismatch");
        }
        for (const auto& row : mat) {
            if (row.size() != m.n) {
                throw std::invalid_argument("schur_multiply: matrix size mismatch");
            }
        }
    }
    std::vector<std::vector<double>> out(m.n, std::vector<double>(m.n, 0.0));
    std::vector<std::size_t> j(m.d + 1, 0);
    bool done = false;
    while (!done) {
        double term = m.at(j);
        for (std::size_t k = 0; k < m.d; ++k) {
            term *= mats[k][j[k]][j[k + 1]];
        }
        out[j.front()][j.back()] += term;
        done = true;
        for (std::size_t k = m.d + 1; k-- > 0;) {
            if (++j[k] < m.n) {
                done = false;
                break;
            }
            j[k] = 0;
        }
    }
    return out;
}

/// Monte Carlo estimate of P(Tr(M(X1~,...,Xd~)) >= t) where each matrix
/// entry is an independent largest quantile of its absolute tail. Requires a
/// nonnegative tensor (the hypothesis under which the bound is sharp). The
/// abs variant estimates P(|Tr| >= t).
inline TailEstimate schur_trace_sharp_tail(
    const SchurTensor& m, const std::vector<TailFn>& entry_tails, double t,
    std::size_t samples, std::uint64_t seed, bool abs_variant = false) {
    m.check();
    for (double e : m.entries) {
        if (e < 0.0) {
            throw std::invalid_argument(
                "schur_trace_sharp_tail: tensor entries must be nonnegative");
        }
    }
    if (entry_tails.size() != m.d * m.n * m.n) {
        throw std::invalid_argument(
            "schur_trace_sharp_tail: need one tail per matrix entry (d*n*n)");
    }
    std::vector<NeatRV> xs;
    for (const TailFn& f : entry_tails) xs.push_back(xtilde(f));
    const CounterRng rng(seed);
    std::vector<std::vector<std::vector<double>>> mats(
        m.d, std::vector<std::vector<double>>(m.n, std::vector<double>(m.n)));
    std::size_t hits = 0;
    const std::size_t per_sample = m.d * m.n * m.n;
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t e = 0;
        for (std::size_t k = 0; k < m.d; ++k) {
            for (std::size_t i = 0; i < m.n; ++i) {
                for (std::size_t jj = 0; jj < m.n; ++jj, ++e) {
                    mats[k][i][jj] = xs[e].quantile(rng.uniform(s * per_sample + e));
                }
            }
        }
        const auto prod = schur_multiply(m, mats);
        double trace = 0.0;
        for (std::size_t i = 0; i < m.n; ++i) trace += prod[i][i];
        if ((abs_variant ? std::abs(trace) : trace) >= t) ++hits;
    }
    TailEstimate out;
    out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) /
                            static_cast<double>(samples));
    out.lower = out.estimate - out.stderr_;
    out.upper = out.estimate + out.stderr_;
    return out;
}

// ---------------------------------------------------------------------------
// Continuous one-dimensional functions
// ---------------------------------------------------------------------------

/// A continuous piecewise-linear g: R -> R given by interior knots plus the
/// slopes of the two unbounded end pieces.
struct PiecewiseLinearG {
    std::vector<std::pair<double, double>> knots;  // ascending in x
    double slope_left = 0.0;
    double slope_right = 0.0;

    double operator()(double x) const {
        if (x <= knots.front().first) {
            return knots.front().second + slope_left * (x - knots.front().first);
        }
        if (x >= knots.back().first) {
            return knots.back().second + slope_right * (x - knots.back().first);
        }
        auto it = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double a, const std::pair<double, double>& k) {
                                       return a < k.first;
                                   });
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *(it - 1);
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
};

/// Exact P(g(X) >= t) at the sharpest bound for continuous piecewise-linear
/// g of a single right-tail-bounded coordinate: equals f at the first point
/// where the running maximum of g reaches t (1 when the running maximum
/// starts at or above t, 0 when it never reaches t). Requires the running
/// maximum set of g to be unbounded below, i.e. a nonnegative left end slope.
inline double continuous_1d_sharp_tail(const PiecewiseLinearG& g,
                                       const TailFn& f, double t) {
    require_valid(f, "continuous_1d_sharp_tail");
    if (f.kind() == TailKind::Left) {
        throw std::invalid_argument("continuous_1d_sharp_tail: needs a right tail");
    }
    if (g.knots.empty()) {
        throw std::invalid_argument("continuous_1d_sharp_tail: g needs knots");
    }
    for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
        if (!(g.knots[i].first < g.knots[i + 1].first)) {
            throw std::invalid_argument(
                "continuous_1d_sharp_tail: knot abscissae must ascend");
        }
    }
    if (g.slope_left < 0.0) {
        throw std::invalid_argument(
            "continuous_1d_sharp_tail: the running-maximum set of g is bounded "
            "below (negative left end slope)");
    }
    const double x0 = g.knots.front().first;
    const double y0 = g.knots.front().second;
    // Left extension: running max equals g there (g is nondecreasing on it).
    if (t <= y0) {
        if (g.slope_left == 0.0) {
            // The running maximum already sits at y0 arbitrarily far left.
            return 1.0;
        }
        return f(x0 - (y0 - t) / g.slope_left);
    }
    // Interior segments: track the running maximum and find its first
    // crossing of t (necessarily on a rising stretch of g).
    double run_max = y0;
    for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
        const auto& [xa, ya] = g.knots[i];
        const auto& [xb, yb] = g.knots[i + 1];
        if (yb >= t && run_max < t) {
            return f(xa + (t - ya) * (xb - xa) / (yb - ya));
        }
        run_max = std::max(run_max, yb);
    }
    // Right extension.
    if (g.slope_right > 0.0 && run_max < t) {
        const auto& [xn, yn] = g.knots.back();
        return f(xn + (t - yn) / g.slope_right);
    }
    return run_max >= t ? f(g.knots.back().first) : 0.0;
}

}  // namespace tailbounds
