// Discrete Edwards duality on finite graphs: envelopes over polyhedral cones
// of (omega-)subharmonic node functions as a monotone fixed point, and the
// matching Jensen-measure / Jensen-pair linear program. Equality of the two
// sides is finite LP duality, which is the point of the module.
#pragma once

#include <string>
#include <vector>

#include "envlab/rng.hpp"

namespace envlab {

// Finite graph with the constraint  u(x) <= mean_{y~x} u(y) + c(x)  at each
// constrained node. c = 0 models the subharmonic cone; c > 0 plays the role
// of the form omega. Local kind keeps some nodes unconstrained ("boundary"),
// compact kind constrains every node.
struct ConeModel {
    enum class Kind { Local, Compact };
    Kind kind = Kind::Local;
    int n_nodes = 0;
    std::vector<std::vector<int>> adjacency;
    std::vector<bool> constrained;
    std::vector<double> slack;  // c, per node; read only at constrained nodes

    std::vector<int> constrained_nodes() const;
    void validate() const;  // connectivity, kind invariants, kernel check

    static ConeModel from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct JensenCertificate {
    int barycenter = 0;
    std::vector<double> mu;  // nonnegative, sums to 1
    double b = 0.0;          // offset; 0 for the local kind
    double objective = 0.0;  // sum mu * h
    double gap = 0.0;        // objective + b - primal value at the barycenter
};

struct ConeEnvelopeParams {
    double tol = 1e-12;
    long max_sweeps = 1000000;
};

// Largest u <= h satisfying the cone constraints, by monotone sweeps
// u <- min(h, mean + c) from u = h.
std::vector<double> primal_envelope(const ConeModel& cone, const std::vector<double>& h,
                                    const ConeEnvelopeParams& params = {});

// Dual linear program at barycenter x: minimize mu.h + nu.c subject to
// mu + A^T nu = e_x, mu, nu >= 0, where A is the cone constraint matrix.
// mu is then a probability vector and every cone member u satisfies
// u(x) <= mu.u + b with b = nu.c.
JensenCertificate jensen_lp(const ConeModel& cone, const std::vector<double>& h, int barycenter);
JensenCertificate jensen_lp(const ConeModel& cone, const std::vector<double>& h, int barycenter,
                            double primal_value);

// max over nodes of |primal - (objective + b)|
double edwards_gap(const ConeModel& cone, const std::vector<double>& h, int jobs = 1);

// (sup |P(h1) - P(h2)|, sup |h1 - h2|)
std::pair<double, double> continuity_modulus(const ConeModel& cone, const std::vector<double>& h1,
                                             const std::vector<double>& h2);

// Randomized instances for property tests and the edwards scenario: a random
// spanning tree plus extra edges, so the graph is connected by construction.
ConeModel random_cone(Rng& rng, int n_nodes, ConeModel::Kind kind, double slack_hi = 0.0,
                      double unconstrained_fraction = 0.2);

}  // namespace envlab
