#pragma once

#include "grapde/energy.hpp"
#include "grapde/solver.hpp"
#include "grapde/spectral.hpp"

#include <string>
#include <vector>

namespace grapde {

enum class Verdict { pass, fail, hypothesis_violated };

const char* verdict_name(Verdict v);

struct CheckReport {
    std::string check;
    Verdict verdict = Verdict::pass;
    std::vector<int> witness_vertices;   // fail verdicts always carry a witness
    std::vector<double> witness_values;
    std::string detail;
    double tolerance = 0.0;
    double max_ratio = 0.0;              // embedding audits
    int samples = 0;
    int violations = 0;
};

// Per-vertex signed Euler-Lagrange residual of the model's system: the
// energy gradient projected onto the admissible space (pointwise on the
// interior for order-1 Dirichlet systems, on V for global systems).
struct ResidualReport {
    GraphFunction u, v;
    double max_abs = 0.0;
};
ResidualReport el_residual(const EnergyModel& model, const FunctionPair& pair);

// Strong maximum principle checker: verifies u,v >= 0 and the supersolution
// inequalities -Delta_p u + h1 |u|^{p-2} u >= 0 (resp. q, h2, v) at every
// vertex, then propagates zeros across edges. Inputs are sup-normalized and
// inequalities take the -1e-12 slack. All outcomes are verdicts.
CheckReport smp_check(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v,
                      const GraphFunction& h1, const GraphFunction& h2, double p, double q);

// Inequality audit over random eigenspace elements against the analytic C*
// (q <= 0 or infinity switches to the L-infinity constant C_*).
CheckReport embedding_audit_eigenspace(const WeightedGraph& g, const EigenData& eig, int m,
                                       double q, int origin, int samples, std::uint64_t seed);

// W-space audit against the empirically maximized constant * (1 + 1e-9).
CheckReport embedding_audit_sobolev(const WeightedGraph& g, const SobolevSpec& spec, double q,
                                    int samples, std::uint64_t seed);

// One-stop audit of a solve report: EL residual within tolerance, strict
// positivity on the model's active vertex set (via smp_check when a zero is
// present), and for J1 the eigenspace-membership and mean-zero identities.
CheckReport solution_audit(const EnergyModel& model, const SolveReport& report,
                           double residual_tol);

} // namespace grapde
