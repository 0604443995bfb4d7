#include "envlab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "envlab/grid.hpp"
#include "envlab/parallel.hpp"
#include "envlab/simplex.hpp"

namespace envlab {

std::vector<int> ConeModel::constrained_nodes() const {
    std::vector<int> out;
    for (int i = 0; i < n_nodes; ++i)
        if (constrained[i]) out.push_back(i);
    return out;
}

namespace {

// rank of a dense matrix by Gaussian elimination with partial pivoting
int matrix_rank(std::vector<std::vector<double>> a, double tol) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < rows; ++r)
            if (std::abs(a[r][col]) > best) {
                best = std::abs(a[r][col]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const double f = a[r][col] / a[rank][col];
            if (f == 0.0) continue;
            for (int cc = col; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

void ConeModel::validate() const {
    if (n_nodes <= 0) throw error("ConeModel: empty graph");
    if (static_cast<int>(adjacency.size()) != n_nodes ||
        static_cast<int>(constrained.size()) != n_nodes ||
        static_cast<int>(slack.size()) != n_nodes)
        throw error("ConeModel: inconsistent sizes");
    for (int i = 0; i < n_nodes; ++i) {
        if (adjacency[i].empty()) throw error("ConeModel: isolated node " + std::to_string(i));
        for (int j : adjacency[i]) {
            if (j < 0 || j >= n_nodes) throw error("ConeModel: edge out of range");
            if (std::find(adjacency[j].begin(), adjacency[j].end(), i) == adjacency[j].end())
                throw error("ConeModel: adjacency not symmetric");
        }
        if (constrained[i] && slack[i] < 0.0)
            throw error("ConeModel: negative slack at node " + std::to_string(i));
    }
    // connectivity
    std::vector<bool> seen(n_nodes, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adjacency[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
    }
    if (reached != n_nodes) throw error("ConeModel: graph not connected");

    const auto cons = constrained_nodes();
    if (kind == Kind::Local) {
        if (static_cast<int>(cons.size()) == n_nodes)
            throw error("ConeModel: local kind needs at least one unconstrained node");
    } else {
        if (static_cast<int>(cons.size()) != n_nodes)
            throw error("ConeModel: compact kind must constrain every node");
        bool zero_slack = true;
        for (int i = 0; i < n_nodes; ++i)
            if (slack[i] > 0.0) zero_slack = false;
        if (zero_slack) {
            // with c = 0 the cone must consist of constants only: the
            // constraint matrix has kernel = span{1}
            std::vector<std::vector<double>> A(n_nodes, std::vector<double>(n_nodes, 0.0));
            for (int i = 0; i < n_nodes; ++i) {
                A[i][i] = 1.0;
                const double w = -1.0 / adjacency[i].size();
                for (int j : adjacency[i]) A[i][j] += w;
            }
            if (matrix_rank(std::move(A), 1e-9) != n_nodes - 1)
                throw error("ConeModel: compact c=0 cone admits non-constants");
        }
    }
}

std::vector<double> primal_envelope(const ConeModel& cone, const std::vector<double>& h,
                                    const ConeEnvelopeParams& params) {
    if (static_cast<int>(h.size()) != cone.n_nodes) throw error("primal_envelope: size mismatch");
    for (double v : h)
        if (!std::isfinite(v)) throw error("primal_envelope: non-finite obstacle");

    std::vector<double> u = h;
    const auto cons = cone.constrained_nodes();
    double update = 0.0;
    for (long sweep = 0; sweep < params.max_sweeps; ++sweep) {
        update = 0.0;
        for (int x : cons) {
            double mean = 0.0;
            for (int y : cone.adjacency[x]) mean += u[y];
            mean /= cone.adjacency[x].size();
            const double v = std::min(h[x], mean + cone.slack[x]);
            update = std::max(update, u[x] - v);
            u[x] = v;
        }
        if (update <= params.tol) return u;
    }
    // monotone and bounded below, so this is effectively unreachable; guarded anyway
    throw error("primal_envelope: did not converge (last update " + std::to_string(update) + ")");
}

JensenCertificate jensen_lp(const ConeModel& cone, const std::vector<double>& h, int barycenter) {
    const double primal = primal_envelope(cone, h)[barycenter];
    return jensen_lp(cone, h, barycenter, primal);
}

JensenCertificate jensen_lp(const ConeModel& cone, const std::vector<double>& h, int barycenter,
                            double primal_value) {
    if (barycenter < 0 || barycenter >= cone.n_nodes) throw error("jensen_lp: bad barycenter");
    const int n = cone.n_nodes;
    const auto cons = cone.constrained_nodes();
    const int m = static_cast<int>(cons.size());

    // variables: mu (n), nu (m); rows: mu + A^T nu = e_x
    std::vector<std::vector<double>> A(n, std::vector<double>(n + m, 0.0));
    std::vector<double> b(n, 0.0), cost(n + m, 0.0);
    for (int i = 0; i < n; ++i) A[i][i] = 1.0;
    for (int k = 0; k < m; ++k) {
        const int x = cons[k];
        A[x][n + k] += 1.0;
        const double w = -1.0 / cone.adjacency[x].size();
        for (int y : cone.adjacency[x]) A[y][n + k] += w;
    }
    b[barycenter] = 1.0;
    for (int i = 0; i < n; ++i) cost[i] = h[i];
    for (int k = 0; k < m; ++k) cost[n + k] = cone.slack[cons[k]];

    LpResult lp = simplex_solve(A, b, cost);
    if (lp.status == LpStatus::IterLimit)
        throw error("jensen_lp: simplex cycling guard exhausted");
    if (lp.status == LpStatus::Infeasible)
        throw error("jensen_lp: dual program infeasible (should be impossible: mu = delta_x)");
    if (lp.status == LpStatus::Unbounded) throw error("jensen_lp: dual program unbounded");

    JensenCertificate cert;
    cert.barycenter = barycenter;
    cert.mu.assign(lp.x.begin(), lp.x.begin() + n);
    double bsum = 0.0, obj = 0.0;
    for (int k = 0; k < m; ++k) bsum += lp.x[n + k] * cone.slack[cons[k]];
    for (int i = 0; i < n; ++i) obj += cert.mu[i] * h[i];
    cert.b = bsum;
    cert.objective = obj;
    cert.gap = obj + bsum - primal_value;
    return cert;
}

double edwards_gap(const ConeModel& cone, const std::vector<double>& h, int jobs) {
    const std::vector<double> primal = primal_envelope(cone, h);
    std::vector<double> gaps(cone.n_nodes, 0.0);
    parallel_for(cone.n_nodes, jobs, [&](int x) {
        const JensenCertificate cert = jensen_lp(cone, h, x, primal[x]);
        gaps[x] = std::abs(cert.gap);
    });
    return *std::max_element(gaps.begin(), gaps.end());
}

std::pair<double, double> continuity_modulus(const ConeModel& cone, const std::vector<double>& h1,
                                             const std::vector<double>& h2) {
    const auto p1 = primal_envelope(cone, h1);
    const auto p2 = primal_envelope(cone, h2);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < cone.n_nodes; ++i) {
        lhs = std::max(lhs, std::abs(p1[i] - p2[i]));
        rhs = std::max(rhs, std::abs(h1[i] - h2[i]));
    }
    return {lhs, rhs};
}

ConeModel random_cone(Rng& rng, int n_nodes, ConeModel::Kind kind, double slack_hi,
                      double unconstrained_fraction) {
    ConeModel cone;
    cone.kind = kind;
    cone.n_nodes = n_nodes;
    cone.adjacency.assign(n_nodes, {});
    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        if (std::find(cone.adjacency[a].begin(), cone.adjacency[a].end(), b) !=
            cone.adjacency[a].end())
            return;
        cone.adjacency[a].push_back(b);
        cone.adjacency[b].push_back(a);
    };
    for (int v = 1; v < n_nodes; ++v) add_edge(v, rng.uniform_int(0, v - 1));  // spanning tree
    const int extra = n_nodes / 2;
    for (int e = 0; e < extra; ++e)
        add_edge(rng.uniform_int(0, n_nodes - 1), rng.uniform_int(0, n_nodes - 1));

    cone.constrained.assign(n_nodes, true);
    cone.slack.assign(n_nodes, 0.0);
    if (kind == ConeModel::Kind::Local) {
        int unconstrained = std::max(1, static_cast<int>(unconstrained_fraction * n_nodes));
        while (unconstrained > 0) {
            const int v = rng.uniform_int(0, n_nodes - 1);
            if (cone.constrained[v]) {
                cone.constrained[v] = false;
                --unconstrained;
            }
        }
    } else if (slack_hi > 0.0) {
        for (int i = 0; i < n_nodes; ++i) cone.slack[i] = rng.uniform(0.0, slack_hi);
    }
    cone.validate();
    return cone;
}

ConeModel ConeModel::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ConeModel cone;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "local")
        cone.kind = Kind::Local;
    else if (kind == "compact")
        cone.kind = Kind::Compact;
    else
        throw error("ConeModel: unknown kind '" + kind + "'");
    cone.n_nodes = j.at("nodes").get<int>();
    cone.adjacency.assign(cone.n_nodes, {});
    for (const auto& e : j.at("edges")) {
        const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a < 0 || a >= cone.n_nodes || b < 0 || b >= cone.n_nodes)
            throw error("ConeModel: edge out of range");
        cone.adjacency[a].push_back(b);
        cone.adjacency[b].push_back(a);
    }
    cone.constrained.assign(cone.n_nodes, cone.kind == Kind::Compact);
    if (j.contains("constrained"))
        for (const auto& v : j["constrained"]) cone.constrained[v.get<int>()] = true;
    cone.slack.assign(cone.n_nodes, 0.0);
    if (j.contains("slack")) {
        const auto& s = j["slack"];
        if (s.is_number()) {
            std::fill(cone.slack.begin(), cone.slack.end(), s.get<double>());
        } else {
            for (int i = 0; i < cone.n_nodes; ++i) cone.slack[i] = s.at(i).get<double>();
        }
    }
    cone.validate();
    return cone;
}

std::string ConeModel::to_json_text() const {
    nlohmann::json j;
    j["kind"] = kind == Kind::Local ? "local" : "compact";
    j["nodes"] = n_nodes;
    nlohmann::json edges = nlohmann::json::array();
    for (int a = 0; a < n_nodes; ++a)
        for (int b : adjacency[a])
            if (a < b) edges.push_back({a, b});
    j["edges"] = edges;
    nlohmann::json cons = nlohmann::json::array();
    for (int i = 0; i < n_nodes; ++i)
        if (constrained[i]) cons.push_back(i);
    j["constrained"] = cons;
    j["slack"] = slack;
    return j.dump(2);
}

}  // namespace envlab
