#include "envlab/disks.hpp"

#include <algorithm>
#include <cmath>

namespace envlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kDomainMargin = 1e-9;

void check_inside(const AnalyticDisk& f) {
    for (const Complex& w : f.boundary)
        if (std::abs(w) > 1.0 + kDomainMargin)
            throw error("analytic disk image escapes the closed unit disk (|w| = " +
                        std::to_string(std::abs(w)) + ")");
}
}  // namespace

Complex moebius(Complex a, Complex w) { return (w - a) / (1.0 - std::conj(a) * w); }

AnalyticDisk make_affine_disk(Complex z, double rho, double theta, int m) {
    if (rho < 0.0) throw error("make_affine_disk: negative radius");
    AnalyticDisk f;
    f.center = z;
    f.boundary.resize(m);
    const Complex dir = std::polar(rho, theta);
    for (int k = 0; k < m; ++k)
        f.boundary[k] = z + dir * std::polar(1.0, kTwoPi * k / m);
    check_inside(f);
    return f;
}

AnalyticDisk make_blaschke_disk(Complex z, double rho, double theta, int m) {
    if (rho < 0.0 || rho >= 1.0) throw error("make_blaschke_disk: radius must lie in [0,1)");
    AnalyticDisk f;
    f.center = z;  // phi_{-z}(0) = z
    f.boundary.resize(m);
    const Complex dir = std::polar(rho, theta);
    for (int k = 0; k < m; ++k)
        f.boundary[k] = moebius(-z, dir * std::polar(1.0, kTwoPi * k / m));
    check_inside(f);
    return f;
}

AnalyticDisk twist_disk(const AnalyticDisk& f, Complex a) {
    if (std::abs(a) >= 1.0) throw error("twist_disk: |a| must be < 1");
    AnalyticDisk g;
    g.center = moebius(a, f.center);
    g.boundary.resize(f.boundary.size());
    for (size_t k = 0; k < f.boundary.size(); ++k) g.boundary[k] = moebius(a, f.boundary[k]);
    check_inside(g);
    return g;
}

double boundary_average(const AnalyticDisk& f, const Obstacle& h) {
    check_inside(f);
    double s = 0.0;
    for (const Complex& w : f.boundary) s += h(w.real(), w.imag());
    return s / static_cast<double>(f.boundary.size());
}

double boundary_average(const AnalyticDisk& f, const Field& h) {
    return boundary_average(f, [&h](double x, double y) { return interpolate(h, x, y); });
}

std::vector<AnalyticDisk> DiskFamily::members(Complex z) const {
    std::vector<AnalyticDisk> out;
    const double dist = 1.0 - std::abs(z);
    for (int r = 0; r < n_radii; ++r) {
        const double shrink = std::pow(radius_ratio, r);
        const double rho_affine = dist * shrink;
        const double rho_blaschke = blaschke_rho_max * shrink;
        for (int q = 0; q < n_rotations; ++q) {
            const double theta = kTwoPi * q / n_rotations;
            if (rho_affine > 0.0) out.push_back(make_affine_disk(z, rho_affine, theta, m_samples));
            if (include_blaschke)
                out.push_back(make_blaschke_disk(z, rho_blaschke, theta, m_samples));
        }
    }
    return out;
}

double poletsky_bound(const Obstacle& h, Complex z, const DiskFamily& family) {
    if (std::abs(z) >= 1.0) throw error("poletsky_bound: z must be interior");
    double best = h(z.real(), z.imag());  // degenerate point disk
    for (const AnalyticDisk& f : family.members(z))
        best = std::min(best, boundary_average(f, h));
    return best;
}

double second_diff_disk(const Obstacle& h, Complex z, Complex a, const DiskFamily& family) {
    if (std::abs(a) > 0.5) throw error("second_diff_disk: |a| must be <= 1/2");
    if (std::abs(z) >= 1.0) throw error("second_diff_disk: z must be interior");

    // the three bounds share one base family; the twisted families evaluate
    // phi_{+-a} composed with the same disks
    const std::vector<AnalyticDisk> base = family.members(z);
    const Complex za = moebius(a, z), zma = moebius(-a, z);

    double b0 = h(z.real(), z.imag());
    double bp = h(za.real(), za.imag());
    double bm = h(zma.real(), zma.imag());
    for (const AnalyticDisk& f : base) {
        b0 = std::min(b0, boundary_average(f, h));
        bp = std::min(bp, boundary_average(twist_disk(f, a), h));
        bm = std::min(bm, boundary_average(twist_disk(f, -a), h));
    }
    return bp + bm - 2.0 * b0;
}

}  // namespace envlab
