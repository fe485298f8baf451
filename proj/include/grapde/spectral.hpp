#pragma once

#include "grapde/calculus.hpp"
#include "grapde/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grapde {

// First positive eigenvalue of -Delta with its psi-orthonormal eigenspace.
struct EigenData {
    double lambda1 = 0.0;
    std::vector<GraphFunction> basis;   // -Delta b = lambda1 b, int b dpsi = 0
    int multiplicity = 0;
    double cluster_tol = 0.0;           // absolute tolerance used to cluster
    double rayleigh_value = 0.0;        // route (b) result, reconciled with (a)
    std::vector<double> spectrum;       // all eigenvalues, ascending
};

// Dense symmetric eigendecomposition of the psi-normalized operator,
// reconciled against Rayleigh-quotient minimization over the complement of
// the constant direction. Throws on disconnected graphs and on internal
// disagreement beyond 1e-7 relative.
EigenData first_eigenvalue(const WeightedGraph& g);

struct EmbeddingConstant {
    double value = 0.0;
    std::string kind;                   // "analytic-cstar" | "empirical"
    double linf_constant = 0.0;         // C_* (analytic kind)
    double term_path = 0.0, term_origin = 0.0, term_even = 0.0;
    bool formula_faithful_only = false; // q < 1: no norm-theoretic reading
    int m = 1;
    double q = 2.0;
    int origin = 0;
    GraphFunction witness;              // best function found (empirical kind)
};

// Closed-form constant of the eigenfunction embedding lemma:
//   C* = max{ 2*sqrt2*lambda1^{(1-m)/2}/sqrt(w0) * ||rho||_q,
//             2^{1/q+1} max{||rho||_q, psi(O)^{1/q}} / sqrt(psi(O)),
//             2^{1/q}  max{||rho||_q, psi(O)^{1/q}} / sqrt(psi0 (lambda1^m + 1)) }
// plus the L-infinity constant C_* evaluated at max rho.
EmbeddingConstant sobolev_constant_cstar(const WeightedGraph& g, int m, double q, int origin);
EmbeddingConstant sobolev_constant_cstar(const WeightedGraph& g, const EigenData& eig, int m,
                                         double q, int origin);

// max relative deviation of  int |grad^m u|^2 dpsi  vs  lambda1^m int u^2 dpsi
// over the eigenspace basis and `samples` random combinations.
double eigenspace_power_identity(const WeightedGraph& g, const EigenData& eig, int m,
                                 int samples = 16, std::uint64_t seed = 0);

struct RayleighOptions {
    int multi_start = 16;      // first two starts deterministic
    std::uint64_t seed = 0;
    int max_iter = 4000;
    double grad_tol = 1e-11;
};

struct RayleighResult {
    double value = 0.0;
    GraphFunction witness;
    double oracle_value = 0.0; // generalized-eigenproblem route when it ran
    bool oracle_ran = false;
};

// inf over admissible nonzero u of
//   dirichlet (domain given):  int_Om |grad^m u|^p  /  int_Om weight |u|^p
//   global (domain absent):    int_V (|grad^m u|^p + h |u|^p) / int_V weight |u|^p
// by multi-start projected gradient on the unit-denominator manifold. For
// p = 2, m = 1 with positive weight the result is cross-checked against a
// dense generalized symmetric eigenproblem; disagreement throws.
RayleighResult weighted_rayleigh_inf(const WeightedGraph& g,
                                     const std::optional<DomainSpec>& domain, int m, double p,
                                     const GraphFunction& weight,
                                     const std::optional<GraphFunction>& h,
                                     const RayleighOptions& opts = {});

// sup ||u||_{L^q} / ||u||_spec over the admissible unit sphere by multi-start
// projected ascent; a certified lower bound on the embedding constant.
// q may be infinity (pass q <= 0 or std::numeric_limits::infinity()).
EmbeddingConstant empirical_embedding_constant(const WeightedGraph& g, const SobolevSpec& spec,
                                               double target_q, const RayleighOptions& opts = {});

// Coupled constant S1 = inf ||(u,v)||_H^2 / (int_Om |u|^p |v|^q)^{2/(p+q)}
// over W0^{1,2}(Omega)^2 pairs with positive interaction integral.
struct CoupledConstant {
    double value = 0.0;
    GraphFunction witness_u, witness_v;
};
CoupledConstant coupled_constant_s1(const WeightedGraph& g, const DomainSpec& dom, double p,
                                    double q, const RayleighOptions& opts = {});

} // namespace grapde
