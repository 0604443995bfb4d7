#include "envlab/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace envlab {

EnvelopeReport sh_envelope(const Field& h, const EnvelopeParams& params) {
    const Grid2& g = *h.grid;
    for (int idx = 0; idx < g.size(); ++idx)
        if (!g.is_exterior(idx) && !std::isfinite(h.values[idx]))
            throw error("sh_envelope: obstacle not finite at node " + std::to_string(idx));
    if (g.interior_nodes.empty()) throw error("sh_envelope: grid has no interior nodes");

    EnvelopeReport rep;
    rep.envelope = h;  // starting iterate u0 = h; the fixed point from above
    rep.contact_tol = 10.0 * params.tol;

    std::vector<double>& u = rep.envelope.values;
    const std::vector<double>& obs = h.values;
    const int nx = g.nx;

    // contiguous interior runs per row, in row-major order; sweeping spans
    // beats walking the node list and visits nodes in the same order
    std::vector<std::pair<int, int>> spans;  // [first, last] inclusive
    for (int idx : g.interior_nodes) {
        if (!spans.empty() && spans.back().second + 1 == idx &&
            spans.back().first / nx == idx / nx)
            spans.back().second = idx;
        else
            spans.emplace_back(idx, idx);
    }

    double update = 0.0;
    long sweep = 0;
    for (; sweep < params.max_iter; ++sweep) {
        update = 0.0;
        if ((sweep & 1) == 0) {
            for (const auto& [first, last] : spans) {
                for (int idx = first; idx <= last; ++idx) {
                    const double avg =
                        0.25 * (u[idx - 1] + u[idx + 1] + u[idx - nx] + u[idx + nx]);
                    const double v = std::min(obs[idx], avg);
                    const double d = u[idx] - v;  // monotone decreasing: d >= 0
                    if (d > update) update = d;
                    u[idx] = v;
                }
            }
        } else {
            for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
                for (int idx = it->second; idx >= it->first; --idx) {
                    const double avg =
                        0.25 * (u[idx - 1] + u[idx + 1] + u[idx - nx] + u[idx + nx]);
                    const double v = std::min(obs[idx], avg);
                    const double d = u[idx] - v;
                    if (d > update) update = d;
                    u[idx] = v;
                }
            }
        }
        if (update <= params.tol) {
            ++sweep;
            rep.converged = true;
            break;
        }
    }
    rep.iterations = sweep;
    rep.final_update = update;

    rep.contact_mask.assign(g.size(), false);
    int contacts = 0, live = 0;
    for (int idx = 0; idx < g.size(); ++idx) {
        if (g.is_exterior(idx)) continue;
        ++live;
        if (std::abs(u[idx] - obs[idx]) <= rep.contact_tol) {
            rep.contact_mask[idx] = true;
            ++contacts;
        }
    }
    rep.contact_fraction = live > 0 ? static_cast<double>(contacts) / live : 0.0;
    return rep;
}

EnvelopeReport rooftop(const Field& u, const Field& v, const EnvelopeParams& params) {
    return sh_envelope(field_min_of(u, v), params);
}

std::vector<double> convex_envelope_1d(const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw error("convex_envelope_1d: need >= 2 samples");
    for (double v : samples)
        if (!std::isfinite(v)) throw error("convex_envelope_1d: non-finite sample");

    // lower hull over (i, h_i) via monotone chain; abscissae are uniform so
    // integer indices serve as x-coordinates
    std::vector<int> hull_idx;
    hull_idx.reserve(n);
    auto cross_ok = [&](int a, int b, int c) {
        // keep b if (b-a) x (c-a) stays strictly convex
        const double lhs = (samples[b] - samples[a]) * (c - a);
        const double rhs = (samples[c] - samples[a]) * (b - a);
        return lhs <= rhs;
    };
    for (int i = 0; i < n; ++i) {
        while (hull_idx.size() >= 2 &&
               !cross_ok(hull_idx[hull_idx.size() - 2], hull_idx.back(), i))
            hull_idx.pop_back();
        hull_idx.push_back(i);
    }

    std::vector<double> out(n);
    for (size_t seg = 0; seg + 1 < hull_idx.size(); ++seg) {
        const int a = hull_idx[seg], b = hull_idx[seg + 1];
        const double ya = samples[a], yb = samples[b];
        for (int i = a; i <= b; ++i)
            out[i] = ya + (yb - ya) * (i - a) / static_cast<double>(b - a);
    }
    return out;
}

std::vector<double> convex_envelope_1d_nondecreasing(const std::vector<double>& samples) {
    std::vector<double> hull = convex_envelope_1d(samples);
    // flatten the decreasing left part at the hull minimum
    int arg = 0;
    for (int i = 1; i < static_cast<int>(hull.size()); ++i)
        if (hull[i] < hull[arg]) arg = i;
    for (int i = 0; i < arg; ++i) hull[i] = hull[arg];
    return hull;
}

std::vector<double> toric_rooftop(const std::vector<double>& u0, const std::vector<double>& u1) {
    if (u0.size() != u1.size()) throw error("toric_rooftop: profiles differ in length");
    auto check_monotone = [](const std::vector<double>& u, const char* which) {
        for (size_t i = 1; i < u.size(); ++i)
            if (u[i] < u[i - 1] - 1e-12)
                throw error(std::string("toric_rooftop: ") + which + " not nondecreasing at index " +
                            std::to_string(i));
    };
    check_monotone(u0, "u0");
    check_monotone(u1, "u1");
    std::vector<double> m(u0.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(u0[i], u1[i]);
    return convex_envelope_1d_nondecreasing(m);
}

double RadialOracle::value_at_radius(double r) const {
    const double sv = std::log(std::max(r, std::exp(s.front())));
    if (sv >= s.back()) return hull.back();
    const double step = s[1] - s[0];
    const double f = (sv - s.front()) / step;
    int i = std::clamp(static_cast<int>(std::floor(f)), 0, static_cast<int>(s.size()) - 2);
    const double t = f - i;
    return hull[i] * (1.0 - t) + hull[i + 1] * t;
}

RadialOracle radial_envelope_oracle(const std::function<double(double)>& h_of_r,
                                    double r_max, double r_floor, int n_s) {
    if (!(r_floor > 0 && r_floor < r_max)) throw error("radial_envelope_oracle: bad radii");
    if (n_s < 2) throw error("radial_envelope_oracle: need >= 2 samples");
    RadialOracle o;
    o.s.resize(n_s);
    std::vector<double> samples(n_s);
    const double s0 = std::log(r_floor), s1 = std::log(r_max);
    for (int i = 0; i < n_s; ++i) {
        o.s[i] = s0 + (s1 - s0) * i / (n_s - 1);
        samples[i] = h_of_r(std::exp(o.s[i]));
    }
    o.hull = convex_envelope_1d_nondecreasing(samples);
    return o;
}

}  // namespace envlab
