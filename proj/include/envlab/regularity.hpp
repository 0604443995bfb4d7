// Empirical regularity meters: worst-case modulus fits for Holder exponents,
// second-difference scans with distance-to-boundary scaling, and the
// closed-form witness for the degenerate Monge-Ampere solution on the ball
// in C^2 with cusp boundary data.
#pragma once

#include <utility>
#include <vector>

#include "envlab/geodesic.hpp"
#include "envlab/grid.hpp"

namespace envlab {

struct Lag {
    int kx = 0, ky = 0;
};

// dyadic steps along both axes and the diagonal
std::vector<Lag> default_lag_set();
std::vector<Lag> axis_lag_set();  // x-axis only; for anisotropic calibration fields

struct HolderFit {
    double exponent = 0.0;  // +inf sentinel when the modulus vanishes
    double constant = 0.0;
    double residual = 0.0;                          // rms of the log-log fit
    std::vector<std::pair<double, double>> points;  // (lag length, modulus)
};

// Worst-case modulus per lag (max over node pairs of |u(p+k) - u(p)|), then a
// least-squares fit of log(modulus) = exponent * log(r) + log(constant).
// Needs >= 4 usable lags with >= 100 valid pairs each.
HolderFit holder_fit(const Field& f, const std::vector<Lag>& lags);

struct C11Row {
    double K_radius = 0.0;
    double dist_to_boundary = 0.0;
    double max_ratio = 0.0;  // sup |second difference| / |k h|^2 over K and axis lags
};

struct C11Table {
    std::vector<C11Row> rows;
    // rows[i].max_ratio / rows[j].max_ratio compared against (dist_j/dist_i)^2
    double scaling_quotient(size_t inner, size_t outer) const;
};

C11Table c11_scan(const Field& f, const std::vector<double>& K_radii);
C11Table c11_scan(const GeodesicSlab& slab, const std::vector<double>& K_radii);

struct EtaReport {
    double alpha = 0.0;
    double boundary_identity_error = 0.0;  // vs -|z - z0|^alpha on the sphere
    double min_hessian_entry = 0.0;        // eta_{z1 z1bar} at sampled interior points
    double max_det_closed_form = 0.0;      // exactly zero by rank
    double max_det_fd = 0.0;               // centered-difference cross-check
    bool pass = false;
};

// Checks the explicit solution eta(z1,z2) = -(2 - z1 - conj(z1))^(alpha/2) on
// the unit ball of C^2 with boundary data -|z - (1,0)|^alpha: the boundary
// identity, the sign of the only nonzero complex Hessian entry, and the
// vanishing determinant.
EtaReport eta_example_check(double alpha, int sample_count, unsigned long long seed = 12345);

struct HolderExperimentReport {
    double alpha = 0.0;
    std::vector<double> plane_exponents;  // fitted exponent per interior t-plane
    double min_exponent = 0.0;
    double max_exponent = 0.0;
    SlabChecks checks;
};

// Geodesic from cusp data: u0 is the subharmonic envelope of -|z - z0|^alpha
// (projecting the cusp into the cone keeps the slab a genuine geodesic),
// u1 = 0. Fits the Holder exponent of every interior plane.
HolderExperimentReport holder_geodesic_experiment(double alpha, int n, int n_t, int n_C,
                                                  int jobs = 0);

// The Lipschitz-case experiment: endpoints |z|^2 - 1 and |z|^2 - 1 + c differ
// by a constant, the geodesic is u0 + c t exactly, and every plane fits with
// exponent close to 1.
HolderExperimentReport lipschitz_geodesic_experiment(double c, int n, int n_t, int n_C,
                                                     int jobs = 0);

}  // namespace envlab
