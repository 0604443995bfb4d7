// Analytic-disk functionals on the unit disk: boundary averages over sampled
// disk families, upper bounds for the subharmonic envelope, Moebius twisting,
// and twisted second differences.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "envlab/grid.hpp"

namespace envlab {

using Complex = std::complex<double>;
using Obstacle = std::function<double(double, double)>;  // evaluable on the closed disk

// phi_a(w) = (w - a) / (1 - conj(a) w); the disk automorphism with
// phi_a(a) = 0 and phi_a . phi_a = id.
Complex moebius(Complex a, Complex w);

// A closed analytic disk f : closed unit disk -> closed unit disk, kept as its
// center f(0) and m boundary samples f(e^{i theta_k}). The image is checked to
// stay inside the closed domain with margin 1e-9.
struct AnalyticDisk {
    Complex center;                  // f(0)
    std::vector<Complex> boundary;   // f at the m-th roots of unity
};

// f(w) = z + rho e^{i theta} w; admissible while rho <= 1 - |z|.
AnalyticDisk make_affine_disk(Complex z, double rho, double theta, int m = 256);

// f(w) = phi_{-z}(rho e^{i theta} w): a Blaschke-type disk through z whose
// image stays in the unit disk for every rho < 1.
AnalyticDisk make_blaschke_disk(Complex z, double rho, double theta, int m = 256);

// disk with boundary samples phi_a(f(e^{i theta_k})) and center phi_a(f(0))
AnalyticDisk twist_disk(const AnalyticDisk& f, Complex a);

// (1/m) sum h(f(e^{i theta_k})); errors if the image escapes the closed disk
double boundary_average(const AnalyticDisk& f, const Obstacle& h);
double boundary_average(const AnalyticDisk& f, const Field& h);  // bilinear interpolation

struct DiskFamily {
    int n_radii = 16;
    int n_rotations = 16;
    int m_samples = 256;
    double radius_ratio = 0.7;    // geometric grid rho_max * ratio^k
    double blaschke_rho_max = 0.995;
    bool include_blaschke = true;

    // all member disks through z, the degenerate point disk excluded
    std::vector<AnalyticDisk> members(Complex z) const;
};

// min of boundary averages over the sampled family plus the degenerate point
// disk, so the result never exceeds h(z); an upper bound for the envelope.
double poletsky_bound(const Obstacle& h, Complex z, const DiskFamily& family = {});

// poletsky bounds at phi_{+-a}(z) from the same base family twisted by +-a,
// minus twice the bound at z.
double second_diff_disk(const Obstacle& h, Complex z, Complex a, const DiskFamily& family = {});

}  // namespace envlab
