#include "envlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "envlab/disks.hpp"
#include "envlab/duality.hpp"
#include "envlab/envelope.hpp"
#include "envlab/geodesic.hpp"
#include "envlab/io.hpp"
#include "envlab/parallel.hpp"
#include "envlab/regularity.hpp"
#include "envlab/rng.hpp"

namespace envlab {

// ---------------------------------------------------------------- config ---

ScenarioConfig ScenarioConfig::from_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        cfg.kv[key] = value;
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

std::string ScenarioConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double ScenarioConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': not a number: " + it->second);
    }
}

int ScenarioConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw config_error("config key '" + key + "': not an integer");
    return i;
}

bool ScenarioConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw config_error("config key '" + key + "': not a boolean");
}

unsigned long long ScenarioConfig::seed() const {
    return static_cast<unsigned long long>(get_double("seed", 1));
}
double ScenarioConfig::tol_scale() const { return get_double("tol_scale", 1.0); }
int ScenarioConfig::jobs() const {
    const int j = get_int("jobs", 0);
    return j > 0 ? j : default_jobs();
}

bool ScenarioResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string result_to_json(const ScenarioResult& result) {
    nlohmann::json j;
    j["scenario"] = result.scenario;
    j["pass"] = result.all_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : result.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"relation", c.relation},
                          {"note", c.note}});
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

// ------------------------------------------------------------- utilities ---

namespace {

struct Ctx {
    ScenarioConfig cfg;
    std::string out_dir;
    double ts = 1.0;  // tol_scale
    ScenarioResult result;

    void check_le(const std::string& name, double value, double threshold,
                  const std::string& note = "") {
        result.checks.push_back({name, value <= threshold * ts, value, threshold * ts, "<=", note});
    }
    void check_ge(const std::string& name, double value, double threshold,
                  const std::string& note = "") {
        // thresholds scale away from strictness in both directions
        result.checks.push_back({name, value >= threshold / ts, value, threshold / ts, ">=", note});
    }
    void check_true(const std::string& name, bool ok, const std::string& note = "") {
        result.checks.push_back({name, ok, ok ? 1.0 : 0.0, 1.0, "==", note});
    }
    void report(const std::string& name, double value, const std::string& note = "") {
        result.checks.push_back({name, true, value, 0.0, "report", note});
    }
};

double radial_obstacle(double r) { return std::min(0.0, 4.0 * r - 3.0); }

// sup over nodes near 20 sample radii of |field - radial oracle|; the radii
// stop at 0.8 to stay clear of the first-order boundary-snapping layer
double radial_oracle_disagreement(const Field& f, const RadialOracle& oracle) {
    const Grid2& g = *f.grid;
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
        const double rj = 0.05 + 0.75 * j / 19.0;
        for (int idx = 0; idx < g.size(); ++idx) {
            if (g.is_exterior(idx)) continue;
            const double r = std::hypot(g.coord_x[idx], g.coord_y[idx]);
            if (std::abs(r - rj) > 0.5 * g.spacing) continue;
            worst = std::max(worst, std::abs(f.values[idx] - oracle.value_at_radius(r)));
        }
    }
    return worst;
}

// largest violation of discrete subharmonicity on the non-contact set
double max_noncontact_laplacian_defect(const EnvelopeReport& rep) {
    const Grid2& g = *rep.envelope.grid;
    const Field lap = laplacian(rep.envelope);
    double worst = 0.0;
    for (int idx : g.interior_nodes)
        if (!rep.contact_mask[idx]) worst = std::max(worst, std::abs(lap.values[idx]));
    return worst;
}

GeodesicSlab make_chord_slab(const Field& u0, const Field& u1, int n_t) {
    GeodesicSlab slab;
    slab.grid = u0.grid;
    slab.u0 = u0;
    slab.u1 = u1;
    slab.M = sup_diff(u0, u1);
    slab.t_grid.resize(n_t);
    for (int it = 0; it < n_t; ++it) {
        slab.t_grid[it] = static_cast<double>(it) / (n_t - 1);
        slab.planes.push_back(chord(u0, u1, slab.t_grid[it]));
    }
    return slab;
}

using ScenarioFn = std::function<void(Ctx&)>;

// ------------------------------------------------------------- scenarios ---

void scenario_envelope(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const int n_refined = ctx.cfg.get_int("n_refined", 201);
    EnvelopeParams ep{ctx.cfg.get_double("tol", 1e-10), static_cast<long>(ctx.cfg.get_double("max_iter", 1e6))};

    auto solve_on = [&](int nn) {
        const GridPtr grid = make_grid(DomainSpec::disk(1.0), nn);
        const Field h = make_field(grid, [](double x, double y) {
            return radial_obstacle(std::hypot(x, y));
        });
        EnvelopeReport rep = sh_envelope(h, ep);
        if (!rep.converged) throw envelope_failure(rep.iterations, rep.final_update);
        double boundary_err = 0.0;
        for (int idx : grid->boundary_nodes)
            boundary_err = std::max(boundary_err, std::abs(rep.envelope.values[idx] - h.values[idx]));
        const RadialOracle oracle =
            radial_envelope_oracle(radial_obstacle, 1.0, grid->spacing / 4.0, 4001);
        const double disagreement = radial_oracle_disagreement(rep.envelope, oracle);
        return std::tuple<EnvelopeReport, double, double>{std::move(rep), boundary_err, disagreement};
    };

    auto [rep, boundary_err, gap_coarse] = solve_on(n);
    ctx.check_le("boundary_identity", boundary_err, 1e-12, "P(h) = h at boundary nodes");
    ctx.check_le("radial_oracle_gap", gap_coarse, 2e-2, "2D envelope vs 1D log-radius hull");
    ctx.check_le("noncontact_harmonicity", max_noncontact_laplacian_defect(rep),
                 10.0 * ep.tol / (rep.envelope.grid->spacing * rep.envelope.grid->spacing),
                 "discrete Laplacian off the contact set");

    auto [rep2, boundary_err2, gap_fine] = solve_on(n_refined);
    (void)rep2;
    (void)boundary_err2;
    ctx.check_ge("radial_oracle_refinement", gap_coarse / gap_fine, 1.5,
                 "gap shrink from n=" + std::to_string(n) + " to n=" + std::to_string(n_refined));

    if (!ctx.out_dir.empty()) write_envelope_report(ctx.out_dir, "envelope", rep);
}

void scenario_rooftop(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);
    EnvelopeParams ep{ctx.cfg.get_double("tol", 1e-10), 1000000};

    const Field u = make_field(grid, GeneratorSpec::constant(0.0));
    const GeneratorSpec vgen = GeneratorSpec::parse(
        ctx.cfg.get_string("v", "radial_log(1,1,-1)"));
    const Field v = make_field(grid, vgen);

    EnvelopeReport rep = rooftop(u, v, ep);
    if (!rep.converged) throw envelope_failure(rep.iterations, rep.final_update);

    double boundary_err = 0.0;
    const Field m = field_min_of(u, v);
    for (int idx : grid->boundary_nodes)
        boundary_err = std::max(boundary_err, std::abs(rep.envelope.values[idx] - m.values[idx]));
    ctx.check_le("boundary_identity", boundary_err, 1e-12, "P(u,v) = min(u,v) at boundary nodes");

    const RadialOracle oracle = radial_envelope_oracle(
        [&vgen](double r) { return std::min(0.0, vgen.evaluate(r, 0.0)); }, 1.0,
        grid->spacing / 4.0, 4001);
    ctx.check_le("radial_oracle_gap", radial_oracle_disagreement(rep.envelope, oracle), 2e-2);

    if (!ctx.out_dir.empty()) write_envelope_report(ctx.out_dir, "rooftop", rep);
}

void radial_pair(const GridPtr& grid, Field& u0, Field& u1) {
    u0 = make_field(grid, GeneratorSpec::constant(0.0));
    u1 = make_field(grid, GeneratorSpec::radial_log(1.0, 0.0, -1.0));
}

void slab_invariant_checks(Ctx& ctx, const GeodesicSlab& slab, const std::string& prefix) {
    const SlabChecks sc = slab_checks(slab);
    ctx.check_le(prefix + "sandwich_deficit", sc.sandwich_deficit, 1e-9,
                 "max over (node,t) of V_t - u_t");
    ctx.check_le(prefix + "chord_excess", sc.chord_excess, 1e-9,
                 "max over (node,t) of u_t - chord");
    ctx.check_ge(prefix + "t_convexity_min", sc.t_convexity_min, -1e-8,
                 "min t-second-difference");
    ctx.check_le(prefix + "t_lipschitz_ratio", sc.lipschitz_ratio, sc.M + 2.0 * slab.delta_C,
                 "sup |u_t - u_s| / |t - s| vs M + 2 dC");
}

void scenario_geodesic(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    GeodesicParams gp;
    gp.n_t = ctx.cfg.get_int("n_t", 21);
    gp.n_C = ctx.cfg.get_int("n_C", 81);
    gp.tol = ctx.cfg.get_double("tol", 1e-10);
    gp.jobs = ctx.cfg.jobs();

    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);
    Field u0, u1;
    radial_pair(grid, u0, u1);
    const GeodesicSlab slab = geodesic_dr(u0, u1, gp);

    slab_invariant_checks(ctx, slab, "");
    ctx.check_le("boundary_trace", boundary_trace_error(slab),
                 slab.delta_C + 2.0 * grid->spacing);

    // doubling the C resolution keeps every former branch, so planes may only rise
    GeodesicParams gp2 = gp;
    gp2.n_C = 2 * gp.n_C - 1;
    const GeodesicSlab fine = geodesic_dr(u0, u1, gp2);
    double drop = 0.0;
    for (size_t it = 0; it < slab.planes.size(); ++it)
        for (int idx = 0; idx < grid->size(); ++idx)
            if (!grid->is_exterior(idx))
                drop = std::max(drop, slab.planes[it].values[idx] - fine.planes[it].values[idx]);
    ctx.check_le("C_refinement_monotone", drop, 1e-9,
                 "plane decrease when n_C doubles");

    const HcmaReport h = hcma_residual(slab);
    ctx.report("hcma_max_abs_residual", h.max_abs_residual,
               "diagnostic only; kinked endpoint data keeps this O(1)");
    ctx.report("hcma_min_residual", h.min_residual);

    if (!ctx.out_dir.empty() && ctx.cfg.get_bool("dump_slab", false))
        write_slab(ctx.out_dir + "/slab", slab);
}

void scenario_dr_roundtrip(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    GeodesicParams gp;
    gp.n_t = ctx.cfg.get_int("n_t", 21);
    gp.n_C = ctx.cfg.get_int("n_C", 81);
    gp.tol = ctx.cfg.get_double("tol", 1e-10);
    gp.jobs = ctx.cfg.jobs();

    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);
    Field u0, u1;
    radial_pair(grid, u0, u1);
    const GeodesicSlab slab = geodesic_dr(u0, u1, gp);
    slab_invariant_checks(ctx, slab, "");

    const Field diff = field_axpy(1.0, u1, -1.0, u0);
    const double lo = field_min(diff), range = field_max(diff) - lo;
    EnvelopeParams ep{gp.tol, gp.max_iter};
    const double sp2 = grid->spacing * grid->spacing;

    for (int k = 0; k < 5; ++k) {
        const double C = lo + range * k / 4.0;
        const Field recovered = rooftop_from_slab(slab, C);
        EnvelopeReport direct = rooftop(u0, field_shift(u1, -C), ep);
        if (!direct.converged) throw envelope_failure(direct.iterations, direct.final_update);
        const std::string tag = "C" + std::to_string(k);
        ctx.check_le("roundtrip_gap_" + tag, sup_diff(recovered, direct.envelope),
                     slab.delta_C + 5e-3, "inf_t(u_t - Ct) vs rooftop(u0, u1 - C)");
        ctx.check_ge("kiselman_min_laplacian_" + tag, field_min(laplacian(recovered)),
                     -10.0 * gp.tol / sp2, "inf over t stays subharmonic");
    }

    // P(u0, u1) against the infimum of the slab
    EnvelopeReport proof = rooftop(u0, u1, ep);
    ctx.check_le("rooftop_vs_inf_t", sup_diff(rooftop_from_slab(slab, 0.0), proof.envelope),
                 5e-3, "P(u0,u1) = inf_t u_t");
}

void scenario_boundary_trace(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const int n_fine = ctx.cfg.get_int("n_refined", 201);
    GeodesicParams gp;
    gp.n_t = ctx.cfg.get_int("n_t", 21);
    gp.n_C = ctx.cfg.get_int("n_C", 81);
    gp.jobs = ctx.cfg.jobs();

    // strictly subharmonic background with a harmonic tilt: the boundary
    // difference is genuinely nonconstant while the per-C envelopes detach
    // only in a narrow band, keeping the sweeps cheap at n = 201
    auto trace_for = [&](int nn, int nc) {
        const GridPtr grid = make_grid(DomainSpec::disk(1.0), nn);
        const Field u0 = make_field(grid, [](double x, double y) { return x * x + y * y - 1.0; });
        const Field u1 = make_field(grid, [](double x, double y) {
            return x * x + y * y - 1.0 + 0.5 * x;
        });
        GeodesicParams g2 = gp;
        g2.n_C = nc;
        const GeodesicSlab slab = geodesic_dr(u0, u1, g2);
        return std::pair<double, double>{boundary_trace_error(slab),
                                         slab.delta_C + 2.0 * grid->spacing};
    };

    auto [err_coarse, tol_coarse] = trace_for(n, gp.n_C);
    ctx.check_le("trace_error", err_coarse, tol_coarse, "deviation from (1-t)u0 + t u1");
    auto [err_fine, tol_fine] = trace_for(n_fine, 2 * gp.n_C - 1);
    ctx.check_le("trace_error_refined", err_fine, tol_fine);
    ctx.check_ge("trace_refinement_ratio", err_coarse / err_fine, 1.5,
                 "halving spacing and dC shrinks the trace error");
}

void scenario_hcma(Ctx& ctx) {
    GeodesicParams base;
    base.jobs = ctx.cfg.jobs();
    base.tol = ctx.cfg.get_double("tol", 1e-10);
    const double eps = ctx.cfg.get_double("bump_height", 0.2);
    const double width = ctx.cfg.get_double("bump_width", 0.45);

    // Smooth pair whose difference is constant to high accuracy near the
    // boundary, so the residual of the exact geodesic lives in the interior.
    // The refinement metric is taken on a fixed compact: stencils that touch
    // the projected boundary ring measure the snapping, not the equation, and
    // the t-grid stays fixed while the C-grid doubles so the active-branch
    // slope jumps (of size dC) shrink against the t-step.
    const double compact = ctx.cfg.get_double("compact_radius", 0.85);
    const int ns[3] = {ctx.cfg.get_int("n0", 51), ctx.cfg.get_int("n1", 101),
                       ctx.cfg.get_int("n2", 201)};
    const int ncs[3] = {41, 81, 161};
    double residuals[3] = {0, 0, 0};
    for (int k = 0; k < 3; ++k) {
        const GridPtr grid = make_grid(DomainSpec::disk(1.0), ns[k]);
        const Field u0 = make_field(grid, [](double x, double y) { return x * x + y * y - 1.0; });
        const Field u1 = make_field(grid, [eps, width](double x, double y) {
            return x * x + y * y - 1.0 + eps * std::exp(-(x * x + y * y) / (width * width));
        });
        GeodesicParams gp = base;
        gp.n_t = ctx.cfg.get_int("n_t", 21);
        gp.n_C = ncs[k];
        const HcmaReport rep = hcma_residual(geodesic_dr(u0, u1, gp));
        double interior_max = 0.0;
        for (const Field& res : rep.residual)
            for (int idx : grid->interior_nodes) {
                const double r = std::hypot(grid->coord_x[idx], grid->coord_y[idx]);
                if (r <= compact)
                    interior_max = std::max(interior_max, std::abs(res.values[idx]));
            }
        residuals[k] = interior_max;
        ctx.report("dr_residual_n" + std::to_string(ns[k]), interior_max,
                   "max |residual| on |z| <= " + std::to_string(compact));
        ctx.report("dr_residual_global_n" + std::to_string(ns[k]), rep.max_abs_residual,
                   "including the boundary-snapping ring");
    }
    ctx.check_true("residual_monotone_decay",
                   residuals[0] > residuals[1] && residuals[1] > residuals[2],
                   "max |residual| falls with refinement");

    // the chord of a pair with nonconstant difference is not a geodesic: the
    // discrete determinant goes negative
    const GridPtr grid = make_grid(DomainSpec::disk(1.0), ctx.cfg.get_int("n1", 101));
    const Field w0 = make_field(grid, GeneratorSpec::constant(0.0));
    const Field w1 = make_field(grid, [](double x, double y) { return x * x + y * y - 1.0; });
    const HcmaReport chord_rep = hcma_residual(make_chord_slab(w0, w1, 21));
    ctx.check_le("chord_negative_det", chord_rep.min_residual, -0.01,
                 "negative determinant flags the chord");
}

void scenario_edwards(Ctx& ctx) {
    const int instances = ctx.cfg.get_int("instances", 50);
    const int max_nodes = ctx.cfg.get_int("max_nodes", 60);
    Rng rng(ctx.cfg.seed());
    double worst = 0.0;
    int worst_instance = -1;
    for (int inst = 0; inst < instances; ++inst) {
        const int n = rng.uniform_int(8, max_nodes);
        const bool compact = inst % 2 == 1;
        const double slack_hi = compact ? (inst % 4 == 1 ? 0.5 : 0.0) : 0.0;
        ConeModel cone = random_cone(rng, n, compact ? ConeModel::Kind::Compact : ConeModel::Kind::Local,
                                     slack_hi);
        std::vector<double> h(n);
        for (double& v : h) v = rng.uniform(-1.0, 1.0);
        const double gap = edwards_gap(cone, h, ctx.cfg.jobs());
        if (gap > worst) {
            worst = gap;
            worst_instance = inst;
        }
    }
    ctx.check_le("max_duality_gap", worst, 1e-7,
                 "worst over " + std::to_string(instances) + " instances (worst at #" +
                     std::to_string(worst_instance) + ")");
}

void scenario_poletsky(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const int stride = ctx.cfg.get_int("stride", 10);
    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);
    EnvelopeParams ep{ctx.cfg.get_double("tol", 1e-10), 1000000};
    DiskFamily family;

    auto sample_nodes = [&]() {
        std::vector<int> nodes;
        for (int j = 0; j < grid->ny; j += stride)
            for (int i = 0; i < grid->nx; i += stride) {
                const int idx = grid->index(i, j);
                if (grid->is_exterior(idx)) continue;
                if (std::hypot(grid->coord_x[idx], grid->coord_y[idx]) > 0.9) continue;
                nodes.push_back(idx);
            }
        return nodes;
    };
    const std::vector<int> nodes = sample_nodes();

    {  // subharmonic obstacle: the bound must reproduce the envelope
        const Obstacle h = [](double x, double y) { return x * x + y * y - 1.0; };
        const Field hf = make_field(grid, h);
        EnvelopeReport rep = sh_envelope(hf, ep);
        double one_sided = 0.0, equality = 0.0;
        for (int idx : nodes) {
            const Complex z(grid->coord_x[idx], grid->coord_y[idx]);
            const double bound = poletsky_bound(h, z, family);
            one_sided = std::max(one_sided, rep.envelope.values[idx] - bound);
            equality = std::max(equality, std::abs(bound - rep.envelope.values[idx]));
        }
        ctx.check_le("subharmonic_one_sided", one_sided, 1e-9,
                     "grid envelope never exceeds the disk bound");
        ctx.check_le("subharmonic_equality", equality, 1e-8);
    }
    {  // radial obstacle with a genuine hull
        const Obstacle h = [](double x, double y) { return radial_obstacle(std::hypot(x, y)); };
        const Field hf = make_field(grid, h);
        EnvelopeReport rep = sh_envelope(hf, ep);
        double one_sided = 0.0;
        for (int idx : nodes) {
            const Complex z(grid->coord_x[idx], grid->coord_y[idx]);
            one_sided = std::max(one_sided, rep.envelope.values[idx] - poletsky_bound(h, z, family));
        }
        ctx.check_le("radial_one_sided", one_sided, 1e-9);
        const int center = grid->index((n - 1) / 2, (n - 1) / 2);
        const double gap =
            poletsky_bound(h, Complex(0.0, 0.0), family) - rep.envelope.values[center];
        ctx.check_le("radial_gap_at_origin", std::abs(gap), 5e-2);
    }
}

void scenario_holder(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);

    for (double beta : {0.3, 0.5, 1.0}) {
        const Field radial = make_field(grid, GeneratorSpec::holder_cusp(beta, 0.0, 0.0));
        const HolderFit fit_r = holder_fit(radial, default_lag_set());
        ctx.check_le("calibration_radial_" + std::to_string(beta).substr(0, 3),
                     std::abs(fit_r.exponent - beta), 0.03);
        const Field slab_x = make_field(grid, [beta](double x, double) {
            return std::pow(std::abs(x), beta);
        });
        const HolderFit fit_x = holder_fit(slab_x, axis_lag_set());
        ctx.check_le("calibration_axis_" + std::to_string(beta).substr(0, 3),
                     std::abs(fit_x.exponent - beta), 0.03);
    }

    const double alpha = ctx.cfg.get_double("alpha", 0.5);
    const HolderExperimentReport cusp = holder_geodesic_experiment(
        alpha, n, ctx.cfg.get_int("n_t", 21), ctx.cfg.get_int("n_C", 81), ctx.cfg.jobs());
    ctx.check_ge("cusp_min_exponent", cusp.min_exponent, 0.2,
                 "alpha = " + std::to_string(alpha) + " cusp endpoints");
    ctx.check_le("cusp_max_exponent", cusp.max_exponent, 1.05);
    ctx.check_le("cusp_sandwich_deficit", cusp.checks.sandwich_deficit, 1e-9);

    const HolderExperimentReport lip = lipschitz_geodesic_experiment(
        ctx.cfg.get_double("lipschitz_shift", 0.5), n, ctx.cfg.get_int("n_t", 21),
        ctx.cfg.get_int("n_C", 81), ctx.cfg.jobs());
    ctx.check_ge("lipschitz_min_exponent", lip.min_exponent, 0.9,
                 "C^{1,1} pair with constant boundary difference");
}

void scenario_c11(Ctx& ctx) {
    const int n = ctx.cfg.get_int("n", 101);
    const GridPtr grid = make_grid(DomainSpec::disk(1.0), n);
    const std::vector<double> radii = {0.5, 0.8};

    {  // calibration: pure quadratic scans to exactly 2
        const Field q = make_field(grid, [](double x, double) { return x * x; });
        const C11Table t = c11_scan(q, radii);
        ctx.check_le("calibration_quadratic", std::abs(t.rows[0].max_ratio - 2.0), 1e-9);
    }

    GeodesicParams gp;
    gp.n_t = ctx.cfg.get_int("n_t", 21);
    gp.n_C = ctx.cfg.get_int("n_C", 81);
    gp.jobs = ctx.cfg.jobs();

    {  // DR slab of a smooth pair
        const Field u0 = make_field(grid, [](double x, double y) { return x * x + y * y - 1.0; });
        const Field u1 = make_field(grid, [](double x, double y) {
            return 0.7 * (x * x + y * y - 1.0);
        });
        const C11Table t = c11_scan(geodesic_dr(u0, u1, gp), radii);
        ctx.report("slab_ratio_K05", t.rows[0].max_ratio);
        ctx.report("slab_ratio_K08", t.rows[1].max_ratio);
        ctx.check_le("slab_dist2_scaling", t.scaling_quotient(0, 1), 2.0,
                     "K growth vs (dist ratio)^2");
    }
    {  // rooftop of two C^{1,1} obstacles
        const Field u = make_field(grid, [](double x, double y) { return x * x + y * y - 1.0; });
        const Field v = make_field(grid, GeneratorSpec::smooth_bump(0.3, 0.0, 0.5, -0.8));
        EnvelopeReport rep = rooftop(u, v);
        if (!rep.converged) throw envelope_failure(rep.iterations, rep.final_update);
        const C11Table t = c11_scan(rep.envelope, radii);
        ctx.report("rooftop_ratio_K05", t.rows[0].max_ratio);
        ctx.report("rooftop_ratio_K08", t.rows[1].max_ratio);
        ctx.check_le("rooftop_dist2_scaling", t.scaling_quotient(0, 1), 2.0);
    }
    {  // twisted-disk second differences of a smooth pit scale like |a|^2
        const Obstacle pit = [](double x, double y) {
            return -std::exp(-(x * x + y * y) / 0.36);
        };
        std::vector<double> las, lsd;
        for (int k = 0; k < 10; ++k) {
            const double a = 0.02 + 0.18 * k / 9.0;
            const double sd = second_diff_disk(pit, Complex(0, 0), Complex(a, 0));
            if (std::abs(sd) > 1e-14) {
                las.push_back(std::log(a));
                lsd.push_back(std::log(std::abs(sd)));
            }
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t k = 0; k < las.size(); ++k) {
            sx += las[k];
            sy += lsd[k];
            sxx += las[k] * las[k];
            sxy += las[k] * lsd[k];
        }
        const double m = static_cast<double>(las.size());
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        ctx.check_ge("disk_sweep_exponent", slope, 1.9,
                     "log-log growth of the twisted second difference");
    }
}

void scenario_eta_example(Ctx& ctx) {
    const int samples = ctx.cfg.get_int("samples", 1000);
    for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
        const EtaReport rep = eta_example_check(alpha, samples, ctx.cfg.seed());
        const std::string tag = std::to_string(alpha).substr(0, 4);
        ctx.check_le("boundary_identity_" + tag, rep.boundary_identity_error, 1e-12);
        ctx.check_ge("hessian_entry_min_" + tag, rep.min_hessian_entry, 0.0);
        ctx.check_le("hessian_det_fd_" + tag, rep.max_det_fd, 1e-6);
    }
}

struct Registered {
    ScenarioInfo info;
    ScenarioFn fn;
};

const std::vector<Registered>& registry() {
    static const std::vector<Registered> r = {
        {{"envelope", "subharmonic envelope of a radial obstacle vs the 1D log-radius hull"},
         scenario_envelope},
        {{"rooftop", "rooftop envelope of a pair vs the 1D hull of the pointwise min"},
         scenario_rooftop},
        {{"geodesic", "slab invariants (sandwich, convexity, Lipschitz) for the radial pair"},
         scenario_geodesic},
        {{"dr_roundtrip", "Legendre round trip between the slab and direct rooftops"},
         scenario_dr_roundtrip},
        {{"boundary_trace", "linear boundary trace of the slab and its refinement decay"},
         scenario_boundary_trace},
        {{"hcma", "Monge-Ampere residual decay and chord negative-determinant detection"},
         scenario_hcma},
        {{"edwards", "primal envelope vs Jensen LP duality gap on random graphs"},
         scenario_edwards},
        {{"poletsky", "disk-family upper bounds against grid envelopes"}, scenario_poletsky},
        {{"holder", "Holder exponent calibration and geodesic exponent experiments"},
         scenario_holder},
        {{"c11", "second-difference scans and twisted-disk |a|^2 growth"}, scenario_c11},
        {{"eta_example", "closed-form degenerate solution on the ball in C^2"},
         scenario_eta_example},
    };
    return r;
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
    static const std::vector<ScenarioInfo> infos = [] {
        std::vector<ScenarioInfo> v;
        for (const Registered& r : registry()) v.push_back(r.info);
        return v;
    }();
    return infos;
}

bool scenario_exists(const std::string& name) {
    for (const Registered& r : registry())
        if (r.info.name == name) return true;
    return false;
}

std::string suggest_scenario(const std::string& name) {
    // smallest edit distance among registered names
    auto distance = [](const std::string& a, const std::string& b) {
        std::vector<size_t> row(b.size() + 1);
        for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
        for (size_t i = 1; i <= a.size(); ++i) {
            size_t prev = row[0];
            row[0] = i;
            for (size_t j = 1; j <= b.size(); ++j) {
                const size_t cur = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                                   prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
                prev = cur;
            }
        }
        return row[b.size()];
    };
    std::string best;
    size_t best_d = std::numeric_limits<size_t>::max();
    for (const Registered& r : registry()) {
        const size_t d = distance(name, r.info.name);
        if (d < best_d) {
            best_d = d;
            best = r.info.name;
        }
    }
    return best;
}

ScenarioResult run_scenario(const std::string& name, const ScenarioConfig& config,
                            const std::string& out_dir) {
    const Registered* found = nullptr;
    for (const Registered& r : registry())
        if (r.info.name == name) found = &r;
    if (!found)
        throw config_error("unknown scenario '" + name + "' (did you mean '" +
                           suggest_scenario(name) + "'?)");

    Ctx ctx;
    ctx.cfg = config;
    ctx.out_dir = out_dir;
    ctx.ts = config.tol_scale();
    ctx.result.scenario = name;
    if (!out_dir.empty()) ensure_directory(out_dir);

    found->fn(ctx);

    if (!out_dir.empty())
        write_text_file(out_dir + "/report.json", result_to_json(ctx.result));
    return ctx.result;
}

}  // namespace envlab
