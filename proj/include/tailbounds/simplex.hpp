#pragma once

// A dense primal simplex solver for the tiny linear programs this library
// produces (at most ~64 variables): maximize c.x subject to Ax <= b, x >= 0,
// with b >= 0 so the slack basis is feasible. Bland's rule prevents cycling;
// all comparisons use a 1e-9 feasibility tolerance.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tailbounds {

struct LpResult {
    double value = 0.0;
    std::vector<double> x;
};

inline LpResult simplex_maximize(const std::vector<std::vector<double>>& a,
                                 const std::vector<double>& b,
                                 const std::vector<double>& c,
                                 double tol = 1e-9) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) {
            throw std::invalid_argument("simplex_maximize: ragged constraint matrix");
        }
        if (b[i] < 0.0) {
            throw std::invalid_argument("simplex_maximize: needs b >= 0");
        }
    }
    // Tableau rows 0..m-1: constraints over [x | slacks | rhs]; row m: the
    // objective row holding reduced costs (stored negated so optimality is
    // "no positive entry").
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) t[m][j] = c[j];

    for (;;) {
        // Bland's rule: the entering column is the lowest-index improving one.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t[m][j] > tol) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break;  // optimal
        // Ratio test; Bland tie-break on the lowest basis index.
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > tol) {
                const double ratio = t[i][n + m] / t[i][enter];
                if (leave == m || ratio < best_ratio - tol ||
                    (std::abs(ratio - best_ratio) <= tol &&
                     basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == m) {
            throw std::runtime_error("simplex_maximize: unbounded program");
        }
        // Pivot.
        const double piv = t[leave][enter];
        for (double& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double factor = t[i][enter];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= n + m; ++j) {
                t[i][j] -= factor * t[leave][j];
            }
        }
        basis[leave] = enter;
    }

    LpResult out;
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) out.x[basis[i]] = t[i][n + m];
    }
    for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
    return out;
}

}  // namespace tailbounds
