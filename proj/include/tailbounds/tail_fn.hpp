#pragma once

// Tail-bound functions: representation, validation, evaluation, generalized
// inversion, and the lossy conversions between two-sided and absolute bounds.
//
// A tail function is family-tagged (exponential, Gaussian reversed-CDF, step,
// piecewise-linear, or a lazy sum-min combination) rather than an arbitrary
// callable, so that generalized inverses can be computed exactly.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tailbounds/common.hpp"

namespace tailbounds {

/// Which probability a tail function bounds.
///   Absolute: P(|X| >= t) <= f(t), f left continuous, f(0) = 1, domain [0,inf)
///             (evaluation extends f by 1 on t < 0).
///   Right:    P(X >= t)  <= f(t), f left continuous, 1 at -inf, decays to 0.
///   Left:     P(X <= t)  <= f(t), f right continuous, 0 at -inf, rises to 1.
enum class TailKind { Absolute, Right, Left };

enum class TailFamily { Exponential, Gaussian, Step, PiecewiseLinear, SumMin };

class TailFn;
TailFn reflect(const TailFn& f);

/// A validated-on-demand tail-bound function.
///
/// Step semantics: `breaks` is strictly ascending and `values` has one more
/// entry than `breaks`. For left-continuous kinds (Absolute, Right) the
/// intervals are (-inf,b0], (b0,b1], ..., (b_last,inf); for the
/// right-continuous Left kind they are (-inf,b0), [b0,b1), ..., [b_last,inf).
/// The continuity side is pinned by the kind, never by lookup order.
///
/// Piecewise-linear semantics: `knots` are (t, value) pairs with strictly
/// ascending t, linearly interpolated, constant beyond the end knots.
class TailFn {
public:
    static TailFn exponential(TailKind kind, double rate) {
        TailFn f(kind, TailFamily::Exponential);
        f.rate_ = rate;
        return f;
    }

    static TailFn gaussian(TailKind kind, double mu, double sigma) {
        TailFn f(kind, TailFamily::Gaussian);
        f.mu_ = mu;
        f.sigma_ = sigma;
        return f;
    }

    static TailFn step(TailKind kind, std::vector<double> breaks,
                       std::vector<double> values) {
        TailFn f(kind, TailFamily::Step);
        f.breaks_ = std::move(breaks);
        f.values_ = std::move(values);
        return f;
    }

    static TailFn piecewise_linear(TailKind kind,
                                   std::vector<std::pair<double, double>> knots) {
        TailFn f(kind, TailFamily::PiecewiseLinear);
        f.knots_ = std::move(knots);
        return f;
    }

    /// Lazy h(t) = min{1, plus(t) + minus(-t)} on t >= 0 (Absolute kind).
    static TailFn sum_min(TailFn minus, TailFn plus) {
        TailFn f(TailKind::Absolute, TailFamily::SumMin);
        f.minus_ = std::make_shared<TailFn>(std::move(minus));
        f.plus_ = std::make_shared<TailFn>(std::move(plus));
        return f;
    }

    TailKind kind() const { return kind_; }
    TailFamily family() const { return family_; }
    double rate() const { return rate_; }
    double mu() const { return mu_; }
    double sigma() const { return sigma_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }
    const TailFn& sum_min_minus() const { return *minus_; }
    const TailFn& sum_min_plus() const { return *plus_; }

    /// True for families whose evaluation involves transcendental functions
    /// (loosens comparison tolerances from 1e-12 to 1e-9).
    bool transcendental() const {
        switch (family_) {
            case TailFamily::Exponential:
            case TailFamily::Gaussian:
            case TailFamily::SumMin:
                return true;
            default:
                return false;
        }
    }

    /// Evaluate the tail function, honoring the continuity side exactly at
    /// breakpoints. Absolute tails return 1 for t < 0 (domain extension).
    double operator()(double t) const {
        if (kind_ == TailKind::Absolute && t < 0.0) return 1.0;
        switch (family_) {
            case TailFamily::Exponential:
                if (kind_ == TailKind::Left) {
                    return t >= 0.0 ? 1.0 : std::exp(rate_ * t);
                }
                return t <= 0.0 ? 1.0 : std::exp(-rate_ * t);
            case TailFamily::Gaussian: {
                const double z = (t - mu_) / (sigma_ * std::sqrt(2.0));
                return kind_ == TailKind::Left ? 0.5 * std::erfc(-z)
                                               : 0.5 * std::erfc(z);
            }
            case TailFamily::Step: {
                std::size_t j;
                if (kind_ == TailKind::Left) {
                    // right continuous: first break strictly above t
                    j = static_cast<std::size_t>(
                        std::upper_bound(breaks_.begin(), breaks_.end(), t) -
                        breaks_.begin());
                } else {
                    // left continuous: first break >= t
                    j = static_cast<std::size_t>(
                        std::lower_bound(breaks_.begin(), breaks_.end(), t) -
                        breaks_.begin());
                }
                return values_[j];
            }
            case TailFamily::PiecewiseLinear: {
                if (t <= knots_.front().first) return knots_.front().second;
                if (t >= knots_.back().first) return knots_.back().second;
                auto it = std::upper_bound(
                    knots_.begin(), knots_.end(), t,
                    [](double x, const std::pair<double, double>& k) {
                        return x < k.first;
                    });
                const auto& [t1, v1] = *it;
                const auto& [t0, v0] = *(it - 1);
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            }
            case TailFamily::SumMin: {
                if (kind_ == TailKind::Left) {
                    // mirrored combination: 1 on t > 0, h(-t) otherwise
                    if (t > 0.0) return 1.0;
                    return std::min(1.0, (*plus_)(-t) + (*minus_)(t));
                }
                if (t < 0.0) return 1.0;
                return std::min(1.0, (*plus_)(t) + (*minus_)(-t));
            }
        }
        return 0.0;  // unreachable
    }

    /// The points at which the function may be discontinuous or non-smooth
    /// (used by feasibility checks; empty for smooth families).
    std::vector<double> breakpoints() const {
        switch (family_) {
            case TailFamily::Step:
                return breaks_;
            case TailFamily::PiecewiseLinear: {
                std::vector<double> out;
                out.reserve(knots_.size());
                for (const auto& k : knots_) out.push_back(k.first);
                return out;
            }
            case TailFamily::SumMin: {
                std::vector<double> out;
                for (double b : plus_->breakpoints())
                    if (b >= 0.0) out.push_back(b);
                for (double b : minus_->breakpoints())
                    if (b <= 0.0) out.push_back(-b);
                out.push_back(0.0);
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                return out;
            }
            default:
                return {};
        }
    }

private:
    TailFn(TailKind kind, TailFamily family) : kind_(kind), family_(family) {}

    TailKind kind_;
    TailFamily family_;
    double rate_ = 0.0;
    double mu_ = 0.0;
    double sigma_ = 0.0;
    std::vector<double> breaks_;
    std::vector<double> values_;
    std::vector<std::pair<double, double>> knots_;
    std::shared_ptr<const TailFn> minus_, plus_;

    friend TailFn reflect(const TailFn& f);
};

/// A simultaneous pair of one-sided bounds: P(X <= t) <= minus(t) for t <= 0
/// and P(X >= t) <= plus(t) for t >= 0, with minus(0) = plus(0) = 1.
struct TwoTail {
    TailFn minus;  // Left kind
    TailFn plus;   // Right kind
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Check every representational invariant of `f`; returns an empty list when
/// the function is a genuine member of its declared tail class.
inline std::vector<std::string> validate(const TailFn& f) {
    std::vector<std::string> violations;
    const auto add = [&](const std::string& msg) { violations.push_back(msg); };
    const bool nonincreasing = f.kind() != TailKind::Left;

    switch (f.family()) {
        case TailFamily::Exponential:
            if (!(f.rate() > 0.0)) add("parameter: rate must be > 0");
            break;
        case TailFamily::Gaussian:
            if (!(f.sigma() > 0.0)) add("parameter: sigma must be > 0");
            if (f.kind() == TailKind::Absolute) {
                add("limits: Gaussian reversed CDF cannot satisfy f(0) = 1");
            }
            break;
        case TailFamily::Step: {
            const auto& b = f.breaks();
            const auto& v = f.values();
            if (b.empty() || v.size() != b.size() + 1) {
                add("structure: need ascending breaks and |values| = |breaks|+1");
                break;
            }
            for (std::size_t i = 0; i + 1 < b.size(); ++i) {
                if (!(b[i] < b[i + 1])) {
                    add("breaks: not strictly ascending at index " +
                        std::to_string(i + 1));
                }
            }
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
                    add("range: value " + std::to_string(v[i]) +
                        " outside [0,1] at index " + std::to_string(i));
                }
            }
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                const bool ok = nonincreasing ? v[i] >= v[i + 1] : v[i] <= v[i + 1];
                if (!ok) {
                    add("monotonicity: wrong direction at breakpoint " +
                        std::to_string(b[i]));
                }
            }
            if (f.kind() == TailKind::Right) {
                if (v.front() != 1.0) add("limits: must equal 1 toward -inf");
                if (v.back() != 0.0) add("limits: must decay to 0 toward +inf");
            } else if (f.kind() == TailKind::Left) {
                if (v.front() != 0.0) add("limits: must equal 0 toward -inf");
                if (v.back() != 1.0) add("limits: must rise to 1 toward +inf");
            } else {
                if (f(0.0) != 1.0) add("limits: absolute tail needs f(0) = 1");
                if (v.back() != 0.0) add("limits: must decay to 0 toward +inf");
            }
            break;
        }
        case TailFamily::PiecewiseLinear: {
            const auto& k = f.knots();
            if (k.size() < 2) {
                add("structure: need at least two knots");
                break;
            }
            for (std::size_t i = 0; i + 1 < k.size(); ++i) {
                if (!(k[i].first < k[i + 1].first)) {
                    add("knots: abscissae not strictly ascending at index " +
                        std::to_string(i + 1));
                }
            }
            for (const auto& [t, v] : k) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    add("range: value " + std::to_string(v) +
                        " outside [0,1] at t = " + std::to_string(t));
                }
            }
            for (std::size_t i = 0; i + 1 < k.size(); ++i) {
                const bool ok = nonincreasing ? k[i].second >= k[i + 1].second
                                              : k[i].second <= k[i + 1].second;
                if (!ok) {
                    add("monotonicity: wrong direction at knot t = " +
                        std::to_string(k[i].first));
                }
            }
            if (f.kind() == TailKind::Right) {
                if (k.front().second != 1.0) add("limits: must equal 1 toward -inf");
                if (k.back().second != 0.0) add("limits: must decay to 0 toward +inf");
            } else if (f.kind() == TailKind::Left) {
                if (k.front().second != 0.0) add("limits: must equal 0 toward -inf");
                if (k.back().second != 1.0) add("limits: must rise to 1 toward +inf");
            } else {
                if (f(0.0) != 1.0) add("limits: absolute tail needs f(0) = 1");
                if (k.back().second != 0.0) add("limits: must decay to 0 toward +inf");
            }
            break;
        }
        case TailFamily::SumMin: {
            if (f.kind() == TailKind::Absolute || f.kind() == TailKind::Right) {
                for (const auto& msg : validate(f.sum_min_minus()))
                    add("minus component: " + msg);
                for (const auto& msg : validate(f.sum_min_plus()))
                    add("plus component: " + msg);
                if (f.sum_min_minus().kind() != TailKind::Left)
                    add("structure: minus component must be a left tail");
                if (f.sum_min_plus().kind() != TailKind::Right)
                    add("structure: plus component must be a right tail");
            } else {
                add("structure: combined tail must be absolute or right kind");
            }
            break;
        }
    }
    return violations;
}

inline std::vector<std::string> validate(const TwoTail& tt) {
    std::vector<std::string> violations;
    if (tt.minus.kind() != TailKind::Left) {
        violations.push_back("minus: must be a left tail");
    }
    if (tt.plus.kind() != TailKind::Right) {
        violations.push_back("plus: must be a right tail");
    }
    for (const auto& msg : validate(tt.minus)) violations.push_back("minus: " + msg);
    for (const auto& msg : validate(tt.plus)) violations.push_back("plus: " + msg);
    if (violations.empty()) {
        if (tt.minus(0.0) != 1.0) violations.push_back("minus: requires f(0) = 1");
        if (tt.plus(0.0) != 1.0) violations.push_back("plus: requires f(0) = 1");
    }
    return violations;
}

inline void require_valid(const TailFn& f, const char* who) {
    const auto v = validate(f);
    if (!v.empty()) {
        std::ostringstream oss;
        oss << who << ": invalid tail function:";
        for (const auto& msg : v) oss << ' ' << msg << ';';
        throw std::invalid_argument(oss.str());
    }
}

inline void require_valid(const TwoTail& tt, const char* who) {
    const auto v = validate(tt);
    if (!v.empty()) {
        std::ostringstream oss;
        oss << who << ": invalid two-sided tail:";
        for (const auto& msg : v) oss << ' ' << msg << ';';
        throw std::invalid_argument(oss.str());
    }
}

// ---------------------------------------------------------------------------
// Reflection t -> -t (Right <-> Left), used for the left-tail machinery.
// ---------------------------------------------------------------------------

/// The mirror image r(t) = f(-t), swapping Right and Left kinds.
inline TailFn reflect(const TailFn& f) {
    const TailKind flipped =
        f.kind() == TailKind::Left ? TailKind::Right : TailKind::Left;
    switch (f.family()) {
        case TailFamily::Exponential:
            return TailFn::exponential(flipped, f.rate());
        case TailFamily::Gaussian:
            return TailFn::gaussian(flipped, -f.mu(), f.sigma());
        case TailFamily::Step: {
            std::vector<double> b(f.breaks().rbegin(), f.breaks().rend());
            for (double& x : b) x = -x;
            std::vector<double> v(f.values().rbegin(), f.values().rend());
            return TailFn::step(flipped, std::move(b), std::move(v));
        }
        case TailFamily::PiecewiseLinear: {
            std::vector<std::pair<double, double>> k(f.knots().rbegin(),
                                                     f.knots().rend());
            for (auto& kn : k) kn.first = -kn.first;
            return TailFn::piecewise_linear(flipped, std::move(k));
        }
        case TailFamily::SumMin: {
            TailFn r = TailFn::sum_min(f.sum_min_minus(), f.sum_min_plus());
            r.kind_ = flipped;  // evaluation mirrors itself for Left kind
            return r;
        }
    }
    throw std::logic_error("reflect: unknown family");
}

// ---------------------------------------------------------------------------
// Generalized inverses
// ---------------------------------------------------------------------------

/// sup{ t : f(t) >= 1-s } for a right tail (or an absolute tail extended by 1
/// on t < 0), s in (0,1). Closed form for exponential/Gaussian, exact
/// breakpoint scan for step, exact interpolation for piecewise-linear,
/// bisection (to 1e-13) for lazy combinations.
inline double gen_inverse_right(const TailFn& f, double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("gen_inverse_right: s must lie in (0,1)");
    }
    if (f.kind() == TailKind::Left) {
        throw std::invalid_argument("gen_inverse_right: needs a right/absolute tail");
    }
    const double y = 1.0 - s;
    switch (f.family()) {
        case TailFamily::Exponential:
            return -std::log1p(-s) / f.rate();
        case TailFamily::Gaussian:
            return f.mu() + f.sigma() * std::sqrt(2.0) * erf_inv(2.0 * s - 1.0);
        case TailFamily::Step: {
            // Largest breakpoint where f still reaches y; f equals 1 toward
            // -inf (or at 0 for absolute kind), so a qualifying point exists.
            const auto& b = f.breaks();
            for (std::size_t i = b.size(); i-- > 0;) {
                if (f(b[i]) >= y) return b[i];
            }
            return f.kind() == TailKind::Absolute ? 0.0 : b.front();
        }
        case TailFamily::PiecewiseLinear: {
            const auto& k = f.knots();
            // Last knot with value >= y; the following segment crosses y.
            std::size_t j = k.size();
            for (std::size_t i = k.size(); i-- > 0;) {
                if (k[i].second >= y) {
                    j = i;
                    break;
                }
            }
            if (j == k.size()) {
                // Only reachable for absolute kind with first knot above 0.
                return 0.0;
            }
            if (j + 1 == k.size()) return k.back().first;  // cannot occur: value 0 < y
            const auto& [t0, v0] = k[j];
            const auto& [t1, v1] = k[j + 1];
            if (v0 <= y) return t0;
            return t0 + (v0 - y) / (v0 - v1) * (t1 - t0);
        }
        case TailFamily::SumMin: {
            // Monotone bisection: keep f(lo) >= y > f(hi).
            double lo = 0.0;
            if (f(lo) < y) return 0.0;  // mass pinned at the origin
            double hi = 1.0;
            while (f(hi) >= y) hi *= 2.0;
            while (hi - lo > 1e-13 * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) >= y) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
    }
    throw std::logic_error("gen_inverse_right: unknown family");
}

/// inf{ t : f(t) >= s } for a left tail, s in (0,1); the mirror image of
/// gen_inverse_right.
inline double gen_inverse_left(const TailFn& f, double s) {
    if (f.kind() != TailKind::Left) {
        throw std::invalid_argument("gen_inverse_left: needs a left tail");
    }
    return -gen_inverse_right(reflect(f), 1.0 - s);
}

// ---------------------------------------------------------------------------
// Conversions between two-sided and absolute bounds
// ---------------------------------------------------------------------------

/// The absolute bound implied by a two-sided bound:
/// h(t) = min{1, plus(t) + minus(-t)} for t >= 0. Step pairs close to an
/// exact step function; other pairs are kept as a lazy combination.
inline TailFn two_to_absolute(const TwoTail& tt) {
    require_valid(tt, "two_to_absolute");
    if (tt.plus.family() == TailFamily::Step &&
        tt.minus.family() == TailFamily::Step) {
        const auto h = [&](double t) {
            return std::min(1.0, tt.plus(t) + tt.minus(-t));
        };
        // Candidate discontinuities of t -> plus(t) + minus(-t) on [0, inf).
        std::vector<double> breaks{0.0};
        for (double b : tt.plus.breaks())
            if (b >= 0.0) breaks.push_back(b);
        for (double b : tt.minus.breaks())
            if (b <= 0.0) breaks.push_back(-b);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        std::vector<double> values;
        values.reserve(breaks.size() + 1);
        for (double b : breaks) values.push_back(h(b));  // left continuous
        values.push_back(h(breaks.back() + 1.0));        // constant past the end
        return TailFn::step(TailKind::Absolute, std::move(breaks),
                            std::move(values));
    }
    return TailFn::sum_min(tt.minus, tt.plus);
}

/// The (lossy) two-sided bound implied by an absolute bound:
/// plus(t) = f(t) on t >= 0 extended by 1 below, minus its mirror image.
inline TwoTail absolute_to_two(const TailFn& f) {
    require_valid(f, "absolute_to_two");
    if (f.kind() != TailKind::Absolute) {
        throw std::invalid_argument("absolute_to_two: needs an absolute tail");
    }
    TailFn plus = [&] {
        switch (f.family()) {
            case TailFamily::Exponential:
                return TailFn::exponential(TailKind::Right, f.rate());
            case TailFamily::Step:
                return TailFn::step(TailKind::Right, f.breaks(), f.values());
            case TailFamily::PiecewiseLinear: {
                auto knots = f.knots();
                // Pin the extension: value 1 everywhere left of the origin.
                if (knots.front().first > 0.0 || knots.front().second != 1.0) {
                    knots.insert(knots.begin(), {std::min(0.0, knots.front().first - 1.0), 1.0});
                }
                return TailFn::piecewise_linear(TailKind::Right, std::move(knots));
            }
            case TailFamily::SumMin: {
                TailFn p = TailFn::sum_min(f.sum_min_minus(), f.sum_min_plus());
                return p;  // combined families evaluate as 1 below 0 already
            }
            default:
                throw std::invalid_argument(
                    "absolute_to_two: family lacks a right-tail closure");
        }
    }();
    // Step values below the first break must already be 1 for a valid
    // absolute tail whose first break is at 0; otherwise force the limit.
    if (plus.family() == TailFamily::Step && plus.values().front() != 1.0) {
        auto b = plus.breaks();
        auto v = plus.values();
        b.insert(b.begin(), b.front() - 1.0);
        v.insert(v.begin(), 1.0);
        plus = TailFn::step(TailKind::Right, std::move(b), std::move(v));
    }
    TailFn minus = reflect(plus);
    return TwoTail{std::move(minus), std::move(plus)};
}

}  // namespace tailbounds
