#include "envlab/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace envlab {

namespace {

struct Tableau {
    int m, n;                           // rows, structural + artificial columns
    std::vector<std::vector<double>> T; // m rows of n+1 (rhs last)
    std::vector<double> cost;           // reduced-cost row, n+1 (last = -objective)
    std::vector<int> basis;             // basic variable per row

    void pivot(int row, int col) {
        const double p = T[row][col];
        for (int j = 0; j <= n; ++j) T[row][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = T[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= n; ++j) T[i][j] -= f * T[row][j];
        }
        const double f = cost[col];
        if (f != 0.0)
            for (int j = 0; j <= n; ++j) cost[j] -= f * T[row][j];
        basis[row] = col;
    }
};

// Bland: entering = lowest eligible index, leaving = lowest basic index among
// minimal ratios. Finite termination, no cycling.
LpStatus run_phase(Tableau& tb, int allowed_cols, double tol, long max_iter, long& iters) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j) {
            if (tb.cost[j] < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return LpStatus::Optimal;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < tb.m; ++i) {
            if (tb.T[i][enter] > tol) {
                const double ratio = tb.T[i][tb.n] / tb.T[i][enter];
                if (leave < 0 || ratio < best_ratio - tol ||
                    (ratio < best_ratio + tol && tb.basis[i] < tb.basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return LpStatus::Unbounded;
        tb.pivot(leave, enter);
        if (++iters > max_iter) return LpStatus::IterLimit;
    }
}

}  // namespace

LpResult simplex_solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                       const std::vector<double>& c, double tol, long max_iter) {
    const int m = static_cast<int>(b.size());
    const int n = static_cast<int>(c.size());
    if (m > 500) throw std::runtime_error("simplex_solve: instance exceeds the 500-constraint cap");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::runtime_error("simplex_solve: ragged constraint matrix");

    Tableau tb;
    tb.m = m;
    tb.n = n + m;  // structural + one artificial per row
    tb.T.assign(m, std::vector<double>(tb.n + 1, 0.0));
    tb.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const double sign = b[i] < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tb.T[i][j] = sign * A[i][j];
        tb.T[i][n + i] = 1.0;
        tb.T[i][tb.n] = sign * b[i];
        tb.basis[i] = n + i;
    }

    LpResult res;

    // phase 1: minimize the artificial sum
    tb.cost.assign(tb.n + 1, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= tb.n; ++j)
            if (j < n || j == tb.n) tb.cost[j] -= tb.T[i][j];
    LpStatus st = run_phase(tb, tb.n, tol, max_iter, res.iterations);
    if (st == LpStatus::IterLimit) {
        res.status = st;
        return res;
    }
    const double phase1 = -tb.cost[tb.n];
    if (phase1 > 1e-7) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // drive leftover artificials out where possible; an all-zero row is a
    // redundant constraint and its artificial can stay basic at zero
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        for (int j = 0; j < n; ++j) {
            if (std::abs(tb.T[i][j]) > tol) {
                tb.pivot(i, j);
                break;
            }
        }
    }

    // phase 2: original objective, artificials barred from entering
    tb.cost.assign(tb.n + 1, 0.0);
    for (int j = 0; j < n; ++j) tb.cost[j] = c[j];
    for (int i = 0; i < m; ++i) {
        const int bi = tb.basis[i];
        const double f = bi < n ? c[bi] : 0.0;
        if (f != 0.0)
            for (int j = 0; j <= tb.n; ++j) tb.cost[j] -= f * tb.T[i][j];
    }
    st = run_phase(tb, n, tol, max_iter, res.iterations);
    if (st != LpStatus::Optimal) {
        res.status = st;
        return res;
    }

    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.T[i][tb.n];
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += c[j] * res.x[j];
    res.objective = obj;
    res.status = LpStatus::Optimal;
    return res;
}

}  // namespace envlab
