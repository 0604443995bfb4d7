// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracles {

// Greatest convex minorant by brute force over support lines a*s + b with a
// on a fine grid: for each slope take the largest admissible intercept, then
// the pointwise sup. Exact whenever the hull's slopes land on the grid.
inline std::vector<double> support_line_hull(const std::vector<double>& s,
                                             const std::vector<double>& h, double a_min,
                                             double a_max, int n_a,
                                             bool nonnegative_slopes = false) {
    std::vector<double> out(s.size(), -std::numeric_limits<double>::infinity());
    for (int k = 0; k < n_a; ++k) {
        const double a = a_min + (a_max - a_min) * k / (n_a - 1);
        if (nonnegative_slopes && a < 0) continue;
        double b = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < s.size(); ++i) b = std::min(b, h[i] - a * s[i]);
        for (size_t i = 0; i < s.size(); ++i) out[i] = std::max(out[i], a * s[i] + b);
    }
    return out;
}

// min over a fine t-grid of max_k (a_k + b_k t); brute-force check for the
// piecewise-linear minimization inside rooftop_from_slab
inline double brute_min_upper_envelope(const std::vector<double>& a, const std::vector<double>& b,
                                       int n_t = 20001) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_t; ++i) {
        const double t = static_cast<double>(i) / (n_t - 1);
        double g = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < a.size(); ++k) g = std::max(g, a[k] + b[k] * t);
        best = std::min(best, g);
    }
    return best;
}

}  // namespace oracles
