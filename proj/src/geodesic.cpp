#include "envlab/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "envlab/parallel.hpp"

namespace envlab {

Field chord(const Field& u0, const Field& u1, double t) {
    if (t < 0.0 || t > 1.0) throw error("chord: t must lie in [0,1]");
    return field_axpy(1.0 - t, u0, t, u1);
}

namespace {

Field bern_barrier(const Field& u0, const Field& u1, double t, double M) {
    return field_binary(u0, u1, [t, M](double a, double b) {
        return std::max(a - M * t, b - M * (1.0 - t));
    });
}

}  // namespace

Field barrier(const BarrierSpec& spec, const Field& u0, const Field& u1, double t) {
    if (u0.grid.get() != u1.grid.get()) throw error("barrier: fields on different grids");
    const double M = sup_diff(u0, u1);
    const Grid2& g = *u0.grid;

    switch (spec.kind) {
        case BarrierSpec::Kind::MaxTwo:
            return bern_barrier(u0, u1, t, M);

        case BarrierSpec::Kind::MaxThreeZeroBv: {
            for (int idx = 0; idx < g.size(); ++idx) {
                if (g.is_exterior(idx)) continue;
                if (u0.values[idx] > 1e-12 || u1.values[idx] > 1e-12)
                    throw error("barrier(max_three): endpoint positive at node " +
                                std::to_string(idx));
            }
            for (int idx : g.boundary_nodes)
                if (std::abs(u0.values[idx]) > 1e-9 || std::abs(u1.values[idx]) > 1e-9)
                    throw error("barrier(max_three): nonzero boundary value at node " +
                                std::to_string(idx));
            Field b = bern_barrier(u0, u1, t, M);
            return field_binary(b, field_binary(u0, u1, [](double a, double c) { return a + c; }),
                                [](double x, double y) { return std::max(x, y); });
        }

        case BarrierSpec::Kind::LipschitzDefining: {
            if (spec.rho.grid.get() != u0.grid.get())
                throw error("barrier(lipschitz): rho on a different grid");
            for (int idx : g.boundary_nodes)
                if (std::abs(u1.values[idx] - u0.values[idx] - spec.C) > 1e-9)
                    throw error("barrier(lipschitz): u1-u0 != C on boundary node " +
                                std::to_string(idx));
            for (int idx = 0; idx < g.size(); ++idx) {
                if (g.is_exterior(idx)) continue;
                if (u0.values[idx] + spec.A * spec.rho.values[idx] > u1.values[idx] + 1e-12)
                    throw error("barrier(lipschitz): u0 + A*rho exceeds u1 at node " +
                                std::to_string(idx));
            }
            Field b = bern_barrier(u0, u1, t, M);
            for (int idx = 0; idx < g.size(); ++idx) {
                if (g.is_exterior(idx)) continue;
                const double w = u0.values[idx] + spec.A * spec.rho.values[idx] + spec.C * t;
                b.values[idx] = std::max(b.values[idx], w);
            }
            return b;
        }
    }
    throw error("barrier: unknown kind");
}

GeodesicSlab geodesic_dr(const Field& u0, const Field& u1, const GeodesicParams& params) {
    if (u0.grid.get() != u1.grid.get()) throw error("geodesic_dr: fields on different grids");
    if (params.n_t < 2) throw error("geodesic_dr: n_t must be >= 2");
    if (params.n_C < 2) throw error("geodesic_dr: n_C must be >= 2");

    GeodesicSlab slab;
    slab.grid = u0.grid;
    slab.u0 = u0;
    slab.u1 = u1;
    slab.M = sup_diff(u0, u1);

    const Field diff = field_axpy(1.0, u1, -1.0, u0);
    const double lo = field_min(diff), hi = field_max(diff);
    const double range = hi - lo;

    // The grid carries min(u1-u0) and max(u1-u0) as exact members: the
    // Bernstein barrier branches u0 - Mt and u1 - M(1-t) coincide with
    // P^C + Ct at those C, so the sandwich bound is attained rather than
    // approximated. One padding value on each side; anything further out is
    // dominated by the clamped branches.
    if (range <= 1e-12) {
        slab.C_grid = {lo};
        slab.delta_C = 0.0;
    } else {
        slab.delta_C = range / (params.n_C - 1);
        for (int k = -1; k <= params.n_C; ++k) slab.C_grid.push_back(lo + k * slab.delta_C);
    }

    const int nc = static_cast<int>(slab.C_grid.size());
    slab.rooftops.resize(nc);
    slab.stats.resize(nc);
    EnvelopeParams ep{params.tol, params.max_iter};
    const int jobs = params.jobs > 0 ? params.jobs : default_jobs();

    parallel_for(nc, jobs, [&](int k) {
        const double C = slab.C_grid[k];
        EnvelopeReport rep = rooftop(u0, field_shift(u1, -C), ep);
        if (!rep.converged) throw envelope_failure(rep.iterations, rep.final_update);
        slab.rooftops[k] = std::move(rep.envelope);
        slab.stats[k] = {C, rep.iterations, rep.final_update, rep.converged};
    });

    slab.t_grid.resize(params.n_t);
    for (int it = 0; it < params.n_t; ++it)
        slab.t_grid[it] = static_cast<double>(it) / (params.n_t - 1);

    slab.planes.assign(params.n_t, Field(slab.grid));
    const Grid2& g = *slab.grid;
    for (int it = 0; it < params.n_t; ++it) {
        const double t = slab.t_grid[it];
        Field& plane = slab.planes[it];
        for (int idx = 0; idx < g.size(); ++idx) {
            if (g.is_exterior(idx)) continue;
            double best = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < nc; ++k) {
                const double v = slab.rooftops[k].values[idx] + slab.C_grid[k] * t;
                if (v > best) best = v;
            }
            plane.values[idx] = best;
        }
    }
    // the C-sup reaches the endpoint data only as n_C grows; pin the endpoints
    slab.planes.front() = u0;
    slab.planes.back() = u1;
    return slab;
}

namespace {

// min over t in [0,1] of max_k (a_k + b_k t), slopes b_k strictly increasing.
double min_of_upper_envelope(const std::vector<double>& a, const std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    // upper envelope via the convex hull trick; lines activate left-to-right
    // in slope order
    static thread_local std::vector<int> stack;
    stack.clear();
    auto meet = [&](int p, int q) {  // x where line p and q cross
        return (a[p] - a[q]) / (b[q] - b[p]);
    };
    for (int k = 0; k < n; ++k) {
        // stack[-1] never reaches the envelope once line k crosses stack[-2]
        // no later than stack[-1] does
        while (stack.size() >= 2 &&
               meet(k, stack[stack.size() - 2]) <= meet(stack.back(), stack[stack.size() - 2]))
            stack.pop_back();
        if (stack.size() == 1 && a[k] >= a[stack[0]]) stack.pop_back();  // parallel shift up
        stack.push_back(k);
    }
    // walk segments of [0,1]; the envelope is convex, so the minimum sits
    // where the active slope changes sign (or at an endpoint)
    double best = std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(stack.size());
    for (int i = 0; i < m; ++i) {
        const double seg_lo =
            std::max(i > 0 ? meet(stack[i], stack[i - 1]) : -std::numeric_limits<double>::infinity(), 0.0);
        const double seg_hi =
            std::min(i + 1 < m ? meet(stack[i + 1], stack[i]) : std::numeric_limits<double>::infinity(), 1.0);
        if (seg_lo > seg_hi) continue;
        const int k = stack[i];
        const double t = b[k] >= 0 ? seg_lo : seg_hi;
        best = std::min(best, a[k] + b[k] * t);
    }
    return best;
}

}  // namespace

Field rooftop_from_slab(const GeodesicSlab& slab, double C) {
    const Grid2& g = *slab.grid;
    const int nc = static_cast<int>(slab.C_grid.size());
    Field out(slab.grid);
    std::vector<double> a(nc), b(nc);
    for (int idx = 0; idx < g.size(); ++idx) {
        if (g.is_exterior(idx)) continue;
        for (int k = 0; k < nc; ++k) {
            a[k] = slab.rooftops[k].values[idx];
            b[k] = slab.C_grid[k] - C;
        }
        double v = nc == 1 ? std::min({a[0], a[0] + b[0]})  // single branch: check both ends
                           : min_of_upper_envelope(a, b);
        // endpoints count as limits: the planes there are the raw inputs
        v = std::min(v, slab.u0.values[idx]);
        v = std::min(v, slab.u1.values[idx] - C);
        out.values[idx] = v;
    }
    return out;
}

double boundary_trace_error(const GeodesicSlab& slab) {
    const Grid2& g = *slab.grid;
    double worst = 0.0;
    for (size_t it = 0; it < slab.t_grid.size(); ++it) {
        const double t = slab.t_grid[it];
        for (int idx : g.boundary_nodes) {
            const double lin = (1.0 - t) * slab.u0.values[idx] + t * slab.u1.values[idx];
            worst = std::max(worst, std::abs(slab.planes[it].values[idx] - lin));
        }
    }
    return worst;
}

HcmaReport hcma_residual(const GeodesicSlab& slab) {
    const int n_t = static_cast<int>(slab.t_grid.size());
    if (n_t < 5) throw error("hcma_residual: need n_t >= 5");
    const Grid2& g = *slab.grid;
    const double dt = slab.t_grid[1] - slab.t_grid[0];
    const double sp = g.spacing;

    HcmaReport rep;
    rep.min_residual = std::numeric_limits<double>::infinity();
    rep.min_laplacian = std::numeric_limits<double>::infinity();
    rep.residual.reserve(n_t - 2);

    for (int k = 1; k + 1 < n_t; ++k) {
        const std::vector<double>& um = slab.planes[k - 1].values;
        const std::vector<double>& uc = slab.planes[k].values;
        const std::vector<double>& up = slab.planes[k + 1].values;
        Field res(slab.grid);
        for (int idx : g.interior_nodes) {
            const int e = idx + 1, w = idx - 1, nn = idx + g.nx, ss = idx - g.nx;
            const double lap =
                (uc[e] + uc[w] + uc[nn] + uc[ss] - 4.0 * uc[idx]) / (sp * sp);
            const double utt = (up[idx] + um[idx] - 2.0 * uc[idx]) / (dt * dt);
            const double uxt = (up[e] - up[w] - um[e] + um[w]) / (4.0 * sp * dt);
            const double uyt = (up[nn] - up[ss] - um[nn] + um[ss]) / (4.0 * sp * dt);
            const double det = (0.25 * lap) * (0.25 * utt) - 0.25 * 0.25 * (uxt * uxt + uyt * uyt);
            res.values[idx] = det;
            rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(det));
            rep.min_residual = std::min(rep.min_residual, det);
            rep.min_laplacian = std::min(rep.min_laplacian, lap);
        }
        rep.residual.push_back(std::move(res));
    }
    return rep;
}

TLipschitzReport t_lipschitz_check(const GeodesicSlab& slab) {
    const Grid2& g = *slab.grid;
    TLipschitzReport rep;
    rep.M = slab.M;
    const int n_t = static_cast<int>(slab.t_grid.size());
    for (int i = 0; i < n_t; ++i) {
        for (int j = i + 1; j < n_t; ++j) {
            const double inv_dt = 1.0 / (slab.t_grid[j] - slab.t_grid[i]);
            const std::vector<double>& pi = slab.planes[i].values;
            const std::vector<double>& pj = slab.planes[j].values;
            for (int idx = 0; idx < g.size(); ++idx) {
                if (g.is_exterior(idx)) continue;
                rep.max_ratio = std::max(rep.max_ratio, std::abs(pj[idx] - pi[idx]) * inv_dt);
            }
        }
    }
    return rep;
}

SlabChecks slab_checks(const GeodesicSlab& slab) {
    const Grid2& g = *slab.grid;
    SlabChecks out;
    out.M = slab.M;
    out.t_convexity_min = std::numeric_limits<double>::infinity();
    const int n_t = static_cast<int>(slab.t_grid.size());

    for (int it = 0; it < n_t; ++it) {
        const double t = slab.t_grid[it];
        const std::vector<double>& p = slab.planes[it].values;
        for (int idx = 0; idx < g.size(); ++idx) {
            if (g.is_exterior(idx)) continue;
            const double a = slab.u0.values[idx], b = slab.u1.values[idx];
            const double V = std::max(a - slab.M * t, b - slab.M * (1.0 - t));
            const double lin = (1.0 - t) * a + t * b;
            out.sandwich_deficit = std::max(out.sandwich_deficit, V - p[idx]);
            out.chord_excess = std::max(out.chord_excess, p[idx] - lin);
        }
    }
    for (int it = 1; it + 1 < n_t; ++it) {
        const std::vector<double>& pm = slab.planes[it - 1].values;
        const std::vector<double>& pc = slab.planes[it].values;
        const std::vector<double>& pp = slab.planes[it + 1].values;
        for (int idx = 0; idx < g.size(); ++idx) {
            if (g.is_exterior(idx)) continue;
            out.t_convexity_min =
                std::min(out.t_convexity_min, pp[idx] + pm[idx] - 2.0 * pc[idx]);
        }
    }
    out.lipschitz_ratio = t_lipschitz_check(slab).max_ratio;
    return out;
}

}  // namespace envlab
