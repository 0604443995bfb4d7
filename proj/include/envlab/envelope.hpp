// Largest subharmonic minorants on planar grids (n = 1, where psh means
// subharmonic), rooftop envelopes of pairs, and the 1D convex-hull engines
// used for toric profiles and for radial cross-checks.
#pragma once

#include <vector>

#include "envlab/grid.hpp"

namespace envlab {

struct EnvelopeParams {
    double tol = 1e-10;
    long max_iter = 1000000;
};

struct EnvelopeReport {
    Field envelope;
    long iterations = 0;        // number of sweeps performed
    double final_update = 0.0;  // sup-norm of the last sweep's change
    bool converged = false;
    std::vector<bool> contact_mask;  // envelope = obstacle within contact_tol
    double contact_tol = 0.0;
    double contact_fraction = 0.0;   // over non-exterior nodes
};

// Thrown by callers that cannot proceed past a failed solve (geodesic_dr).
struct envelope_failure : error {
    long iterations;
    double final_update;
    envelope_failure(long it, double upd)
        : error("envelope sweep failed to converge: final_update = " + std::to_string(upd) +
                " after " + std::to_string(it) + " sweeps"),
          iterations(it), final_update(upd) {}
};

// Largest grid function u <= h with discrete Laplacian >= 0 (up to tol),
// computed by the monotone Gauss-Seidel sweep u <- min(h, neighbor average)
// started from u = h, with alternating lexicographic/reverse passes.
// Boundary values equal h exactly.
EnvelopeReport sh_envelope(const Field& h, const EnvelopeParams& params = {});

// sh_envelope applied to the pointwise min(u, v).
EnvelopeReport rooftop(const Field& u, const Field& v, const EnvelopeParams& params = {});

// Greatest convex minorant of samples on uniform abscissae, evaluated at the
// same abscissae (lower hull, monotone chain). Needs >= 2 finite samples.
std::vector<double> convex_envelope_1d(const std::vector<double>& samples);

// Greatest convex *nondecreasing* minorant: the hull with its decreasing
// left part flattened at the hull minimum (slopes clipped at 0 from below).
std::vector<double> convex_envelope_1d_nondecreasing(const std::vector<double>& samples);

// Rooftop of two toric profiles on a shared uniform s-grid: the greatest
// convex nondecreasing minorant of the pointwise min. Inputs must be
// nondecreasing.
std::vector<double> toric_rooftop(const std::vector<double>& u0, const std::vector<double>& u1);

// Radial cross-check oracle: the envelope of a radial obstacle in the
// substitution s = log r, where radial subharmonic = convex nondecreasing
// in s. The profile is sampled on n_s points of [log(s_floor), log(R)].
struct RadialOracle {
    std::vector<double> s;     // abscissae
    std::vector<double> hull;  // envelope profile at the abscissae
    double value_at_radius(double r) const;  // linear interpolation, clamped left
};
RadialOracle radial_envelope_oracle(const std::function<double(double)>& h_of_r,
                                    double r_max, double r_floor, int n_s = 2001);

}  // namespace envlab
