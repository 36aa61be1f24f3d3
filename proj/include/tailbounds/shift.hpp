#pragma once

// The four shift operators over finite coordinate sets. Each one pushes a
// tail-bounded r.v.'s mass outward onto a finite set G as far as the tail
// permits, and admits an exact atom distribution plus a closed reversed-CDF
// formula.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tailbounds/common.hpp"
#include "tailbounds/neat.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

/// One coordinate's finite target set, strictly ascending.
using CoordSet = std::vector<double>;

/// A product set G = G^1 x ... x G^n of finite coordinate sets.
struct Grid {
    std::vector<CoordSet> coords;

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const auto& c : coords) n += c.size();
        return n;
    }
};

inline void require_coord_set(const CoordSet& g, const char* who,
                              bool needs_zero) {
    if (g.empty()) throw std::invalid_argument(std::string(who) + ": empty set");
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        if (!(g[i] < g[i + 1])) {
            throw std::invalid_argument(std::string(who) +
                                        ": coordinates must be strictly ascending");
        }
    }
    if (needs_zero && !std::binary_search(g.begin(), g.end(), 0.0)) {
        throw std::invalid_argument(std::string(who) + ": set must contain 0");
    }
}

/// Atoms produced by a one-sided shift. The grid atoms carry the mass the
/// tail allows on G; any remainder (possible only when f(inf G) < 1) lies
/// strictly on the near side of the grid. Its exact spread does not affect
/// the reversed CDF on the grid side, so only a representative location is
/// recorded: the largest point the residual mass could occupy.
struct ShiftedAtoms {
    std::vector<Atom> atoms;       // values in G, sorted ascending
    double residual_mass = 0.0;    // mass below min G (right) / above max G (left)
    double residual_value = 0.0;   // representative location for sampling

    /// Flatten to a discrete neat r.v. The residual, when present, is placed
    /// at its representative location (one valid choice among many).
    NeatRV to_neat() const {
        std::vector<Atom> all = atoms;
        if (residual_mass > 0.0) all.push_back({residual_value, residual_mass});
        return neat_from_atoms(std::move(all));
    }
};

// ---------------------------------------------------------------------------
// Right shift
// ---------------------------------------------------------------------------

/// Distribution of s -> sup (G u (-inf, inf G])_{<= Xtilde(s)}: the mass at a
/// grid point is the successive difference of f between it and the next grid
/// point above (f past the top point counting as 0).
inline ShiftedAtoms shift_right_atoms(const TailFn& f, const CoordSet& g) {
    require_valid(f, "shift_right_atoms");
    require_coord_set(g, "shift_right_atoms", false);
    if (f.kind() == TailKind::Left) {
        throw std::invalid_argument("shift_right_atoms: needs a right/absolute tail");
    }
    ShiftedAtoms out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double above = (i + 1 < g.size()) ? f(g[i + 1]) : 0.0;
        const double mass = f(g[i]) - above;
        if (mass > 0.0) out.atoms.push_back({g[i], mass});
    }
    const double res = 1.0 - f(g.front());
    if (res > 0.0) {
        out.residual_mass = res;
        out.residual_value = gen_inverse_right(f, res);
    }
    return out;
}

/// P(shift_right(f,G) >= t) = f(inf (G u (-inf, inf G])_{>= t}), with the
/// empty infimum at +inf where f counts as 0.
inline double shift_right_rcdf(const TailFn& f, const CoordSet& g, double t) {
    require_coord_set(g, "shift_right_rcdf", false);
    if (t <= g.front()) return f(t);
    const auto it = std::lower_bound(g.begin(), g.end(), t);
    if (it == g.end()) return 0.0;
    return f(*it);
}

// ---------------------------------------------------------------------------
// Left shift (mirror image of the right shift)
// ---------------------------------------------------------------------------

inline ShiftedAtoms shift_left_atoms(const TailFn& f, const CoordSet& g) {
    require_valid(f, "shift_left_atoms");
    require_coord_set(g, "shift_left_atoms", false);
    if (f.kind() != TailKind::Left) {
        throw std::invalid_argument("shift_left_atoms: needs a left tail");
    }
    CoordSet neg(g.rbegin(), g.rend());
    for (double& v : neg) v = -v;
    const ShiftedAtoms mirrored = shift_right_atoms(reflect(f), neg);
    ShiftedAtoms out;
    out.atoms.assign(mirrored.atoms.rbegin(), mirrored.atoms.rend());
    for (Atom& a : out.atoms) a.value = -a.value;
    out.residual_mass = mirrored.residual_mass;
    out.residual_value = -mirrored.residual_value;
    return out;
}

/// P(shift_left(f,G) <= t), the mirrored formula.
inline double shift_left_cdf(const TailFn& f, const CoordSet& g, double t) {
    CoordSet neg(g.rbegin(), g.rend());
    for (double& v : neg) v = -v;
    return shift_right_rcdf(reflect(f), neg, -t);
}

// ---------------------------------------------------------------------------
// Two-sided shift
// ---------------------------------------------------------------------------

/// Distribution of the two-sided shift with split point c: below s = c mass
/// is pushed down onto G as far as the left tail allows (surplus the left
/// tail cannot hold lands on the atom at 0), above it mass is pushed up as
/// far as the right tail allows. Atoms lie in G; nonpositive values carry
/// the left part, nonnegative the right part.
inline std::vector<Atom> shift_two_atoms(const TwoTail& tt, const CoordSet& g,
                                         double c) {
    require_valid(tt, "shift_two_atoms");
    require_coord_set(g, "shift_two_atoms", true);
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::invalid_argument("shift_two_atoms: c must lie in [0,1]");
    }
    std::vector<Atom> atoms;
    // Left part, s in (0, c): value = min G_{>= inf minus^{-1}[s,1]}.
    // P(value <= v) over that range is min(c, minus(v)).
    double prev = 0.0;
    for (double v : g) {
        if (v > 0.0) break;
        const double cum = std::min(c, tt.minus(v));
        if (cum - prev > 0.0) atoms.push_back({v, cum - prev});
        prev = cum;
    }
    if (c - prev > 0.0) {
        // Surplus the left tail cannot hold below 0; it belongs at the 0 atom
        // together with any right-part mass there.
        atoms.push_back({0.0, c - prev});
    }
    // Right part, s in [c, 1): value = max G_{<= sup plus^{-1}[1-s,1]}.
    // P(value >= v) over that range is 1 - max(c, 1 - plus(v)).
    std::vector<double> nonneg;
    for (double v : g) {
        if (v >= 0.0) nonneg.push_back(v);
    }
    for (std::size_t i = 0; i < nonneg.size(); ++i) {
        const double lo = std::max(c, 1.0 - tt.plus(nonneg[i]));
        const double hi =
            (i + 1 < nonneg.size()) ? std::max(c, 1.0 - tt.plus(nonneg[i + 1])) : 1.0;
        const double mass = hi - lo;
        if (mass > 0.0) {
            if (!atoms.empty() && atoms.back().value == nonneg[i]) {
                atoms.back().mass += mass;
            } else {
                atoms.push_back({nonneg[i], mass});
            }
        }
    }
    return atoms;
}

// ---------------------------------------------------------------------------
// Absolute shift
// ---------------------------------------------------------------------------

/// Distribution of the absolute shift: magnitudes follow the right shift of
/// f over G's magnitudes, and each magnitude takes the positive sign when the
/// positive point is in G (the positive branch is preferred on ties), the
/// negative sign otherwise. Because 0 is in G and f(0) = 1, no residual mass
/// arises. Atoms are returned sorted by ascending magnitude.
inline RadialRV shift_abs_atoms(const TailFn& f, const CoordSet& g) {
    require_valid(f, "shift_abs_atoms");
    require_coord_set(g, "shift_abs_atoms", true);
    if (f.kind() != TailKind::Absolute) {
        throw std::invalid_argument("shift_abs_atoms: needs an absolute tail");
    }
    CoordSet mags;
    for (double v : g) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    const ShiftedAtoms radial = shift_right_atoms(f, mags);
    RadialRV out;
    for (const Atom& a : radial.atoms) {
        const bool positive = std::binary_search(g.begin(), g.end(), a.value);
        out.atoms.push_back({positive ? a.value : -a.value, a.mass});
    }
    return out;
}

/// P(|shift_abs(f,G)| >= t) = f(inf (G magnitudes)_{>= t}), empty -> 0.
inline double shift_abs_rcdf(const TailFn& f, const CoordSet& g, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("shift_abs_rcdf: t must be nonnegative");
    }
    require_coord_set(g, "shift_abs_rcdf", true);
    CoordSet mags;
    for (double v : g) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    const auto it = std::lower_bound(mags.begin(), mags.end(), t);
    if (it == mags.end()) return 0.0;
    return f(*it);
}

}  // namespace tailbounds
