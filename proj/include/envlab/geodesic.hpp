// Geodesics between two potentials via the Legendre-type representation
// u_t = sup_C { P(u0, u1 - C) + C t }, together with subgeodesic barriers,
// boundary traces, t-Lipschitz diagnostics, and the degenerate Monge-Ampere
// residual of the slab.
#pragma once

#include <vector>

#include "envlab/envelope.hpp"
#include "envlab/grid.hpp"

namespace envlab {

struct CSolveStats {
    double C = 0.0;
    long iterations = 0;
    double final_update = 0.0;
    bool converged = false;
};

// Family of fields indexed by a uniform t-grid in [0,1]. The annulus variable
// never appears: rotation invariance collapses it to t = log|zeta|. Planes at
// the endpoints are the inputs themselves. The per-C rooftop envelopes used to
// assemble the planes are kept: they define the slab for every real t, not
// just the grid values.
struct GeodesicSlab {
    GridPtr grid;
    std::vector<double> t_grid;
    std::vector<Field> planes;       // one per t, endpoints = u0, u1
    std::vector<double> C_grid;      // contains min(u1-u0) and max(u1-u0) exactly
    double delta_C = 0.0;            // C-grid step
    std::vector<Field> rooftops;     // P^C per C
    std::vector<CSolveStats> stats;  // per C
    Field u0, u1;
    double M = 0.0;  // sup |u0 - u1|
};

struct GeodesicParams {
    int n_t = 21;
    int n_C = 81;
    double tol = 1e-10;
    long max_iter = 1000000;
    int jobs = 0;  // 0 = hardware concurrency
};

// (1-t) u0 + t u1
Field chord(const Field& u0, const Field& u1, double t);

struct BarrierSpec {
    enum class Kind { MaxTwo, MaxThreeZeroBv, LipschitzDefining };
    Kind kind = Kind::MaxTwo;
    // LipschitzDefining only: max{V_t, u0 + A*rho + C*t}
    Field rho;
    double A = 0.0;
    double C = 0.0;

    static BarrierSpec max_two() { return {}; }
    static BarrierSpec max_three_zero_bv() { return {Kind::MaxThreeZeroBv, {}, 0.0, 0.0}; }
    static BarrierSpec lipschitz_defining(Field rho, double A, double C) {
        return {Kind::LipschitzDefining, std::move(rho), A, C};
    }
};

// Pointwise max of the subgeodesic branches at parameter t. Preconditions for
// the richer kinds are checked node by node.
Field barrier(const BarrierSpec& spec, const Field& u0, const Field& u1, double t);

GeodesicSlab geodesic_dr(const Field& u0, const Field& u1, const GeodesicParams& params = {});

// P^C recovered from the slab: pointwise infimum over t in [0,1] of
// u_t(z) - C t, where u_t is the slab's max-of-affine extension in t. The
// minimization is exact on the piecewise-linear profile, which keeps the
// result subharmonic up to solver tolerance.
Field rooftop_from_slab(const GeodesicSlab& slab, double C);

// max over boundary nodes and grid t of |plane_t - chord_t|
double boundary_trace_error(const GeodesicSlab& slab);

struct HcmaReport {
    double max_abs_residual = 0.0;
    double min_residual = 0.0;   // signed minimum of the discrete determinant
    double min_laplacian = 0.0;  // most negative z-Laplacian over interior (node, t)
    std::vector<Field> residual;  // per interior t
};

// Discrete determinant (Lap_z u / 4)(u_tt / 4) - |d_z d_t u|^2 / 4 by centered
// differences, in the w = log zeta chart where d_ww~ = d_tt / 4.
HcmaReport hcma_residual(const GeodesicSlab& slab);

struct TLipschitzReport {
    double max_ratio = 0.0;
    double M = 0.0;
};
TLipschitzReport t_lipschitz_check(const GeodesicSlab& slab);

// Slab invariants evaluated in one pass; used by scenarios and tests.
struct SlabChecks {
    double sandwich_deficit = 0.0;   // max over (node, t) of V_t - plane_t
    double chord_excess = 0.0;       // max over (node, t) of plane_t - chord_t
    double t_convexity_min = 0.0;    // min second difference over the t-grid
    double lipschitz_ratio = 0.0;
    double M = 0.0;
};
SlabChecks slab_checks(const GeodesicSlab& slab);

}  // namespace envlab
