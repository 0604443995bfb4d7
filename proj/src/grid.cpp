#include "envlab/grid.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace envlab {

namespace {

double radius_of(double x, double y) { return std::hypot(x, y); }

// Parses "name(p1,p2,...)" into name + params. Whitespace tolerated.
void split_call(const std::string& text, std::string& name, std::vector<double>& params) {
    name.clear();
    params.clear();
    auto open = text.find('(');
    if (open == std::string::npos) {
        name = text;
    } else {
        auto close = text.rfind(')');
        if (close == std::string::npos || close < open)
            throw error("malformed spec: " + text);
        name = text.substr(0, open);
        std::string body = text.substr(open + 1, close - open - 1);
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.find_first_not_of(" \t") == std::string::npos) continue;
            params.push_back(std::stod(tok));
        }
    }
    // trim
    auto isspace_ = [](unsigned char c) { return std::isspace(c) != 0; };
    name.erase(std::remove_if(name.begin(), name.end(), isspace_), name.end());
}

}  // namespace

DomainSpec DomainSpec::parse(const std::string& text) {
    std::string name;
    std::vector<double> p;
    split_call(text, name, p);
    if (name == "disk") return disk(p.empty() ? 1.0 : p[0]);
    if (name == "rectangle") return rectangle(p.empty() ? 1.0 : p[0]);
    if (name == "annulus_radial") {
        double rin = p.size() > 0 ? p[0] : 0.5;
        double rout = p.size() > 1 ? p[1] : 1.0;
        return annulus(rin, rout);
    }
    throw error("unknown domain: " + name);
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Disk: os << "disk(" << radius << ")"; break;
        case Kind::Rectangle: os << "rectangle(" << radius << ")"; break;
        case Kind::AnnulusRadial: os << "annulus_radial(" << inner_radius << "," << radius << ")"; break;
    }
    return os.str();
}

Grid2 build_grid(const DomainSpec& domain, int n_per_axis) {
    if (n_per_axis < 8)
        throw error("build_grid: n_per_axis must be >= 8, got " + std::to_string(n_per_axis));
    if (domain.kind == DomainSpec::Kind::AnnulusRadial &&
        !(domain.inner_radius > 0.0 && domain.inner_radius < domain.radius))
        throw error("build_grid: annulus requires 0 < inner_radius < radius");

    Grid2 g;
    g.nx = g.ny = n_per_axis;
    g.domain = domain;
    const double R = domain.radius;
    g.spacing = 2.0 * R / (n_per_axis - 1);  // bounding-box width / (n-1)
    g.origin_x = -R;
    g.origin_y = -R;
    const int n = g.nx * g.ny;
    g.node_class.assign(n, NodeClass::Exterior);
    g.coord_x.assign(n, 0.0);
    g.coord_y.assign(n, 0.0);

    const double sp = g.spacing;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int idx = g.index(i, j);
            double x = g.origin_x + sp * i;
            double y = g.origin_y + sp * j;
            NodeClass cls = NodeClass::Exterior;
            switch (domain.kind) {
                case DomainSpec::Kind::Rectangle: {
                    // full lattice covers the rectangle; outer ring is the boundary
                    cls = (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1)
                              ? NodeClass::Boundary
                              : NodeClass::Interior;
                    break;
                }
                case DomainSpec::Kind::Disk: {
                    const double r = radius_of(x, y);
                    if (r > R + 1e-12) break;
                    if (r >= R - sp) {
                        cls = NodeClass::Boundary;
                        if (r > 0) {  // project onto |z| = R
                            x *= R / r;
                            y *= R / r;
                        }
                    } else {
                        cls = NodeClass::Interior;
                    }
                    break;
                }
                case DomainSpec::Kind::AnnulusRadial: {
                    const double r = radius_of(x, y);
                    const double rin = domain.inner_radius;
                    if (r > R + 1e-12 || r < rin - 1e-12) break;
                    if (r >= R - sp) {
                        cls = NodeClass::Boundary;
                        x *= R / r;
                        y *= R / r;
                    } else if (r <= rin + sp) {
                        cls = NodeClass::Boundary;
                        x *= rin / r;
                        y *= rin / r;
                    } else {
                        cls = NodeClass::Interior;
                    }
                    break;
                }
            }
            g.node_class[idx] = cls;
            g.coord_x[idx] = x;
            g.coord_y[idx] = y;
            if (cls == NodeClass::Interior) g.interior_nodes.push_back(idx);
            if (cls == NodeClass::Boundary) g.boundary_nodes.push_back(idx);
        }
    }

    if (g.interior_nodes.empty())
        throw error("build_grid: no interior nodes for " + domain.describe());

    // interior nodes must have 4 in-lattice, non-exterior neighbors
    for (int idx : g.interior_nodes) {
        const int i = idx % g.nx, j = idx / g.nx;
        if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1)
            throw error("build_grid: interior node on lattice edge");
        const int nbrs[4] = {idx - 1, idx + 1, idx - g.nx, idx + g.nx};
        for (int nb : nbrs)
            if (g.node_class[nb] == NodeClass::Exterior)
                throw error("build_grid: interior node adjacent to exterior node");
    }
    return g;
}

GridPtr make_grid(const DomainSpec& domain, int n_per_axis) {
    return std::make_shared<const Grid2>(build_grid(domain, n_per_axis));
}

GeneratorSpec GeneratorSpec::holder_cusp(double alpha, double x0, double y0) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw error("holder_cusp: alpha must be in (0,1]");
    return {Kind::HolderCusp, {alpha, x0, y0}};
}

GeneratorSpec GeneratorSpec::toric_sample(std::vector<double> exponents) {
    if (exponents.empty()) throw error("toric_sample: empty exponent vector");
    for (double m : exponents)
        if (m < 0) throw error("toric_sample: exponents must be >= 0");
    return {Kind::ToricSample, std::move(exponents)};
}

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
    std::string name;
    std::vector<double> p;
    split_call(text, name, p);
    auto arity = [&](size_t k) {
        if (p.size() != k)
            throw error("generator " + name + ": expected " + std::to_string(k) +
                        " parameters, got " + std::to_string(p.size()));
    };
    if (name == "constant") { arity(1); return constant(p[0]); }
    if (name == "radial_log") { arity(3); return radial_log(p[0], p[1], p[2]); }
    if (name == "holder_cusp") { arity(3); return holder_cusp(p[0], p[1], p[2]); }
    if (name == "smooth_bump") { arity(4); return smooth_bump(p[0], p[1], p[2], p[3]); }
    if (name == "toric_sample") {
        if (p.empty()) throw error("toric_sample: needs at least one exponent");
        return toric_sample(p);
    }
    throw error("unknown generator: " + name);
}

double GeneratorSpec::evaluate(double x, double y) const {
    switch (kind) {
        case Kind::Constant:
            return params[0];
        case Kind::RadialLog: {
            const double r = radius_of(x, y);
            if (r == 0.0) return params[2];  // a*log 0 = -inf for a>0; the floor wins
            return std::max(params[0] * std::log(r) + params[1], params[2]);
        }
        case Kind::HolderCusp: {
            const double d = std::hypot(x - params[1], y - params[2]);
            return -std::pow(d, params[0]);
        }
        case Kind::SmoothBump: {
            const double dx = x - params[0], dy = y - params[1];
            const double w = params[2];
            return params[3] * std::exp(-(dx * dx + dy * dy) / (w * w));
        }
        case Kind::ToricSample: {
            const double r2 = x * x + y * y;
            double s = 0.0;
            for (double m : params) s += std::pow(r2, m);
            return s;
        }
    }
    return 0.0;
}

std::string GeneratorSpec::describe() const {
    static const char* names[] = {"constant", "radial_log", "holder_cusp", "smooth_bump",
                                  "toric_sample"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)] << "(";
    for (size_t k = 0; k < params.size(); ++k) os << (k ? "," : "") << params[k];
    os << ")";
    return os.str();
}

Field make_field(const GridPtr& grid, const GeneratorSpec& gen) {
    return make_field(grid, [&gen](double x, double y) { return gen.evaluate(x, y); });
}

Field make_field(const GridPtr& grid, const std::function<double(double, double)>& fn) {
    Field f(grid);
    for (int idx = 0; idx < grid->size(); ++idx) {
        if (grid->is_exterior(idx)) continue;
        const double v = fn(grid->coord_x[idx], grid->coord_y[idx]);
        if (!std::isfinite(v))
            throw error("make_field: non-finite value at node " + std::to_string(idx));
        f.values[idx] = v;
    }
    return f;
}

Field laplacian(const Field& f) {
    const Grid2& g = *f.grid;
    Field out(f.grid);
    const double inv_sp2 = 1.0 / (g.spacing * g.spacing);
    for (int idx : g.interior_nodes) {
        const double c = f.values[idx];
        const double s = f.values[idx - 1] + f.values[idx + 1] + f.values[idx - g.nx] +
                         f.values[idx + g.nx];
        out.values[idx] = (s - 4.0 * c) * inv_sp2;
    }
    return out;
}

Field second_difference(const Field& f, int kx, int ky) {
    const Grid2& g = *f.grid;
    Field out(f.grid);
    const int shift = ky * g.nx + kx;
    for (int idx = 0; idx < g.size(); ++idx) {
        if (g.is_exterior(idx)) continue;
        const int i = idx % g.nx, j = idx / g.nx;
        if (i + kx < 0 || i + kx >= g.nx || i - kx < 0 || i - kx >= g.nx) continue;
        if (j + ky < 0 || j + ky >= g.ny || j - ky < 0 || j - ky >= g.ny) continue;
        const int p = idx + shift, m = idx - shift;
        if (g.is_exterior(p) || g.is_exterior(m)) continue;
        out.values[idx] = f.values[p] + f.values[m] - 2.0 * f.values[idx];
    }
    return out;
}

double sup_diff(const Field& a, const Field& b) {
    if (a.grid.get() != b.grid.get()) throw error("sup_diff: fields on different grids");
    double m = 0.0;
    for (int idx = 0; idx < a.size(); ++idx)
        if (!a.grid->is_exterior(idx)) m = std::max(m, std::abs(a.values[idx] - b.values[idx]));
    return m;
}

Field field_binary(const Field& a, const Field& b, const std::function<double(double, double)>& op) {
    if (a.grid.get() != b.grid.get()) throw error("field_binary: fields on different grids");
    Field out(a.grid);
    for (int idx = 0; idx < a.size(); ++idx)
        if (!a.grid->is_exterior(idx)) out.values[idx] = op(a.values[idx], b.values[idx]);
    return out;
}

Field field_map(const Field& a, const std::function<double(double)>& op) {
    Field out(a.grid);
    for (int idx = 0; idx < a.size(); ++idx)
        if (!a.grid->is_exterior(idx)) out.values[idx] = op(a.values[idx]);
    return out;
}

Field field_min_of(const Field& a, const Field& b) {
    return field_binary(a, b, [](double x, double y) { return std::min(x, y); });
}

Field field_shift(const Field& a, double c) {
    return field_map(a, [c](double x) { return x + c; });
}

Field field_axpy(double alpha, const Field& a, double beta, const Field& b) {
    return field_binary(a, b, [alpha, beta](double x, double y) { return alpha * x + beta * y; });
}

double interpolate(const Field& f, double x, double y) {
    const Grid2& g = *f.grid;
    const double fi = (x - g.origin_x) / g.spacing;
    const double fj = (y - g.origin_y) / g.spacing;
    int i = static_cast<int>(std::floor(fi));
    int j = static_cast<int>(std::floor(fj));
    i = std::clamp(i, 0, g.nx - 2);
    j = std::clamp(j, 0, g.ny - 2);
    const double tx = std::clamp(fi - i, 0.0, 1.0);
    const double ty = std::clamp(fj - j, 0.0, 1.0);

    const int c00 = g.index(i, j), c10 = c00 + 1, c01 = c00 + g.nx, c11 = c01 + 1;
    const int corners[4] = {c00, c10, c01, c11};
    double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};

    bool any_exterior = false;
    for (int c : corners)
        if (g.is_exterior(c)) any_exterior = true;
    if (!any_exterior)
        return w[0] * f.values[c00] + w[1] * f.values[c10] + w[2] * f.values[c01] +
               w[3] * f.values[c11];

    // near the curved boundary: nearest non-exterior corner
    double best = exterior_sentinel();
    double best_w = -1.0;
    for (int k = 0; k < 4; ++k) {
        if (!g.is_exterior(corners[k]) && w[k] > best_w) {
            best_w = w[k];
            best = f.values[corners[k]];
        }
    }
    if (best_w < 0) throw error("interpolate: point outside the domain");
    return best;
}

}  // namespace envlab
