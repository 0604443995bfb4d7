// Dense two-phase simplex with Bland's rule. Deterministic, no dependencies;
// sized for the desk-scale programs the duality module produces.
#pragma once

#include <vector>

namespace envlab {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    long iterations = 0;
};

// minimize c.x subject to A x = b, x >= 0.
// rows(A) = b.size(), cols(A) = c.size(); instances capped at 500 constraints.
LpResult simplex_solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                       const std::vector<double>& c, double tol = 1e-9, long max_iter = 200000);

}  // namespace envlab
