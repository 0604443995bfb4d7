// Uniform square lattices over planar model domains, scalar fields on them,
// and the finite-difference primitives shared by every solver in the project.
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace envlab {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class NodeClass : std::uint8_t { Interior, Boundary, Exterior };

struct DomainSpec {
    enum class Kind { Disk, Rectangle, AnnulusRadial };
    Kind kind = Kind::Disk;
    double radius = 1.0;        // disk / annulus outer radius; rectangle half-width
    double inner_radius = 0.5;  // annulus only

    static DomainSpec disk(double r = 1.0) { return {Kind::Disk, r, 0.0}; }
    static DomainSpec rectangle(double half_width = 1.0) { return {Kind::Rectangle, half_width, 0.0}; }
    static DomainSpec annulus(double r_in = 0.5, double r_out = 1.0) {
        return {Kind::AnnulusRadial, r_out, r_in};
    }
    static DomainSpec parse(const std::string& text);
    std::string describe() const;
};

// Square lattice covering the domain's bounding box. Nodes are classified as
// interior / boundary / exterior; boundary nodes of curved domains carry
// coordinates radially projected onto the true boundary, so boundary data is
// always evaluated at exact boundary points.
//
// Immutable after construction; all operations on grids and fields are pure.
struct Grid2 {
    int nx = 0, ny = 0;
    double spacing = 0.0;
    double origin_x = 0.0, origin_y = 0.0;
    DomainSpec domain;
    std::vector<NodeClass> node_class;       // nx*ny
    std::vector<double> coord_x, coord_y;    // evaluation coordinates per node
    std::vector<int> interior_nodes;
    std::vector<int> boundary_nodes;

    int index(int i, int j) const { return j * nx + i; }
    int size() const { return nx * ny; }
    bool is_interior(int idx) const { return node_class[idx] == NodeClass::Interior; }
    bool is_boundary(int idx) const { return node_class[idx] == NodeClass::Boundary; }
    bool is_exterior(int idx) const { return node_class[idx] == NodeClass::Exterior; }

    // lattice coordinates (pre-projection)
    double lattice_x(int idx) const { return origin_x + spacing * (idx % nx); }
    double lattice_y(int idx) const { return origin_y + spacing * (idx / nx); }
};

using GridPtr = std::shared_ptr<const Grid2>;

inline double exterior_sentinel() { return std::numeric_limits<double>::quiet_NaN(); }

// Real values attached to grid nodes. Exterior nodes hold a NaN sentinel which
// poisons any accidental read.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(GridPtr g)
        : grid(std::move(g)), values(grid->size(), exterior_sentinel()) {}

    double operator[](int idx) const {
        assert(!grid->is_exterior(idx) && "read of exterior node");
        return values[idx];
    }
    double& operator[](int idx) { return values[idx]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Test-potential catalogue. Every generator is continuous on the closed domain
// and has a closed form, so quantitative checks can bypass grid interpolation.
struct GeneratorSpec {
    enum class Kind { Constant, RadialLog, HolderCusp, SmoothBump, ToricSample };
    Kind kind = Kind::Constant;
    std::vector<double> params;

    // constant(c)
    static GeneratorSpec constant(double c) { return {Kind::Constant, {c}}; }
    // max(a*log|z| + b, floor)
    static GeneratorSpec radial_log(double a, double b, double floor_value) {
        return {Kind::RadialLog, {a, b, floor_value}};
    }
    // -|z - z0|^alpha, alpha in (0,1]
    static GeneratorSpec holder_cusp(double alpha, double x0, double y0);
    // height * exp(-|z - center|^2 / width^2)
    static GeneratorSpec smooth_bump(double cx, double cy, double width, double height) {
        return {Kind::SmoothBump, {cx, cy, width, height}};
    }
    // sum_j |z|^(2*m_j) over the exponent vector
    static GeneratorSpec toric_sample(std::vector<double> exponents);

    // "name(p1,p2,...)" as used by the CLI
    static GeneratorSpec parse(const std::string& text);

    double evaluate(double x, double y) const;
    std::string describe() const;
};

// --- operations -------------------------------------------------------------

// Builds the lattice and classifies nodes. Rejects n_per_axis < 8.
Grid2 build_grid(const DomainSpec& domain, int n_per_axis);
GridPtr make_grid(const DomainSpec& domain, int n_per_axis);

Field make_field(const GridPtr& grid, const GeneratorSpec& gen);
Field make_field(const GridPtr& grid, const std::function<double(double, double)>& fn);

// 5-point stencil at interior nodes, sentinel elsewhere.
Field laplacian(const Field& f);

// u(p+k) + u(p-k) - 2 u(p) wherever p and both shifts are non-exterior.
Field second_difference(const Field& f, int kx, int ky);

// --- small helpers used across modules --------------------------------------

inline double field_min(const Field& f) {
    double m = std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < f.size(); ++idx)
        if (!f.grid->is_exterior(idx)) m = std::min(m, f.values[idx]);
    return m;
}

inline double field_max(const Field& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < f.size(); ++idx)
        if (!f.grid->is_exterior(idx)) m = std::max(m, f.values[idx]);
    return m;
}

inline double sup_norm(const Field& f) {
    return std::max(std::abs(field_min(f)), std::abs(field_max(f)));
}

// sup over non-exterior nodes of |a - b|
double sup_diff(const Field& a, const Field& b);

Field field_binary(const Field& a, const Field& b, const std::function<double(double, double)>& op);
Field field_map(const Field& a, const std::function<double(double)>& op);
Field field_min_of(const Field& a, const Field& b);
Field field_shift(const Field& a, double c);    // a + c
Field field_axpy(double alpha, const Field& a, double beta, const Field& b);  // alpha*a + beta*b

// Bilinear interpolation of a field at an off-grid point. Cells touching the
// boundary fall back to the nearest non-exterior corner.
double interpolate(const Field& f, double x, double y);

}  // namespace envlab
