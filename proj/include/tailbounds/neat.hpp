#pragma once

// Neat random variables on (0,1): the largest-quantile construction from a
// right tail, discrete atom-list manipulation, and distribution queries.
//
// A neat r.v. is a nondecreasing map (0,1) -> R; only its distribution
// matters downstream, so a discrete one is stored as a sorted atom list.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

/// A neat random variable, either in quantile form (the largest r.v.
/// satisfying a right tail, s -> sup f^{-1}[1-s,1]) or as discrete atoms
/// sorted by ascending value with masses summing to 1.
class NeatRV {
public:
    static NeatRV quantile_of(TailFn f) {
        NeatRV x;
        x.tail_ = std::move(f);
        return x;
    }

    static NeatRV from_atoms(std::vector<Atom> atoms) {
        NeatRV x;
        x.atoms_ = std::move(atoms);
        return x;
    }

    bool is_quantile_form() const { return tail_.has_value(); }
    const TailFn& tail() const { return *tail_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    /// Evaluate the nondecreasing representative at s in (0,1).
    double quantile(double s) const {
        if (!(s > 0.0 && s < 1.0)) {
            throw std::invalid_argument("NeatRV::quantile: s must lie in (0,1)");
        }
        if (tail_) return gen_inverse_right(*tail_, s);
        double cum = 0.0;
        for (const Atom& a : atoms_) {
            cum += a.mass;
            if (s <= cum) return a.value;
        }
        return atoms_.back().value;  // s within rounding of 1
    }

private:
    std::optional<TailFn> tail_;
    std::vector<Atom> atoms_;
};

/// The largest neat r.v. satisfying the right tail f (absolute tails are
/// accepted in their extended-by-1 form); its reversed CDF equals f exactly.
inline NeatRV xtilde(const TailFn& f) {
    require_valid(f, "xtilde");
    if (f.kind() == TailKind::Left) {
        throw std::invalid_argument("xtilde: needs a right or absolute tail");
    }
    return NeatRV::quantile_of(f);
}

/// P(X >= t). For the quantile form this is the defining tail function; for
/// atoms it is the mass at or above t.
inline double rcdf(const NeatRV& x, double t) {
    if (x.is_quantile_form()) return x.tail()(t);
    double total = 0.0;
    for (const Atom& a : x.atoms()) {
        if (a.value >= t) total += a.mass;
    }
    return total;
}

/// Build a discrete neat r.v. from an unsorted atom list: sorts by value,
/// merges duplicates, and rejects nonpositive masses or a total far from 1.
inline NeatRV neat_from_atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) {
        throw std::invalid_argument("neat_from_atoms: empty atom list");
    }
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.mass > 0.0)) {
            throw std::invalid_argument("neat_from_atoms: nonpositive mass");
        }
        total += a.mass;
    }
    if (std::abs(total - 1.0) > kTolExact) {
        throw std::invalid_argument("neat_from_atoms: masses must sum to 1");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().value == a.value) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }
    return NeatRV::from_atoms(std::move(merged));
}

/// True iff the r.v. x satisfies the right tail f, i.e. P(x >= t) <= f(t)
/// at every probe point: the atom values (or a quantile sample) plus every
/// breakpoint of f.
inline bool dominates(const TailFn& f, const NeatRV& x, double tol = kTolExact) {
    const double eps = f.transcendental() ? std::max(tol, kTolTranscendental) : tol;
    std::vector<double> probes = f.breakpoints();
    if (x.is_quantile_form()) {
        for (int i = 1; i < 256; ++i) {
            probes.push_back(x.quantile(static_cast<double>(i) / 256.0));
        }
    } else {
        for (const Atom& a : x.atoms()) probes.push_back(a.value);
    }
    for (double t : probes) {
        if (rcdf(x, t) > f(t) + eps) return false;
    }
    return true;
}

/// A radially neat r.v.: a signed atom list whose magnitude sequence is
/// nondecreasing along the underlying (0,1) ordering. Stored sorted by
/// ascending magnitude (ties broken toward the negative branch first).
struct RadialRV {
    std::vector<Atom> atoms;

    /// P(|X| >= t).
    double rcdf_abs(double t) const {
        double total = 0.0;
        for (const Atom& a : atoms) {
            if (std::abs(a.value) >= t) total += a.mass;
        }
        return total;
    }

    /// Mass sitting exactly at `value` (0 when absent).
    double mass_at(double value) const {
        for (const Atom& a : atoms) {
            if (a.value == value) return a.mass;
        }
        return 0.0;
    }
};

}  // namespace tailbounds
