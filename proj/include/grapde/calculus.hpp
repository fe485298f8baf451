#pragma once

#include "grapde/graph.hpp"
#include "grapde/linalg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace grapde {

// ---- discrete differential operators -------------------------------------

GraphFunction laplacian(const WeightedGraph& g, const GraphFunction& u);
GraphFunction gamma_form(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v);
GraphFunction grad_norm(const WeightedGraph& g, const GraphFunction& u); // |grad u|
// |grad^m u|: |grad Delta^{(m-1)/2} u| for odd m, |Delta^{m/2} u| for even m
GraphFunction m_grad_norm(const WeightedGraph& g, const GraphFunction& u, int m);
// p >= 2; the p = 2 call routes through laplacian() so it matches bitwise
GraphFunction p_laplacian(const WeightedGraph& g, const GraphFunction& u, double p);

// Bilinear pairing behind L_{m,p}: integral of |grad^m u|^{p-2} times the
// m-order product of u and phi; restricted to mask when given (the (pol)
// Omega-variant), over all of V otherwise.
double poly_pairing(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& phi,
                    int m, double p, std::span<const char> mask = {});

// Pointwise representative of L_{m,p} u: B(u, 1_x)/psi(x), computed in
// closed form (adjoint composition of the defining pairing).
GraphFunction poly_apply(const WeightedGraph& g, const GraphFunction& u, int m, double p);

// Gradient (L2(psi) representation) of  u -> (1/p) * int_mask |grad^m u|^p dpsi.
// Empty mask means the whole graph. This is (1/p) * d/du of the Sobolev
// energy and equals L_{m,p} u / 1 on the whole graph.
GraphFunction poly_energy_gradient(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                                   std::span<const char> mask = {});

// ---- norms ----------------------------------------------------------------

struct SobolevSpec {
    int m = 1;
    double p = 2;
    std::optional<GraphFunction> h;        // needed by the whole-graph W norm
    std::optional<DomainSpec> domain;      // dirichlet variants
};

double norm_lp(const WeightedGraph& g, const GraphFunction& u, double s,
               std::span<const char> mask = {});
double norm_linf(const WeightedGraph& g, const GraphFunction& u);
// W^{m,p}(V): (int (|grad^m u|^p + h|u|^p))^(1/p), h > 0
double norm_sobolev_v(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                      const GraphFunction& h);
// H^{m,2}(V): h == 1, p == 2
double norm_eigen_h(const WeightedGraph& g, const GraphFunction& u, int m);
// W^{m,p}(Omega): (sum_{k=0..m} int_Omega |grad^k u|^p)^(1/p)
double norm_sobolev_omega(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                          const DomainSpec& dom);
// W0^{m,p}(Omega): (int_Omega |grad^m u|^p)^(1/p)
double norm_sobolev_zero(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                         const DomainSpec& dom);
// dispatcher used by the CLI: spec.domain absent -> W^{m,p}(V) with spec.h,
// present -> W0 norm (the completion norm (86.11))
double norm_sobolev(const WeightedGraph& g, const GraphFunction& u, const SobolevSpec& spec);

// ---- admissible linear subspaces ------------------------------------------

// Linear space of admissible functions with a psi-orthonormal basis. Modes:
//  - Full:     all of R^V, basis e_x / sqrt(psi(x)) held implicitly
//  - Interior: functions supported on a vertex list (order-1 Dirichlet)
//  - Dense:    materialized basis columns (higher-order constraints,
//              eigenspaces)
class Subspace {
public:
    static Subspace full(const WeightedGraph& g);
    static Subspace interior(const WeightedGraph& g, std::vector<int> verts);
    static Subspace span(const WeightedGraph& g, std::vector<GraphFunction> raw_basis);

    int dim() const { return dim_; }
    int ambient() const { return n_; }

    GraphFunction decode(std::span<const double> coords) const;
    std::vector<double> encode(const GraphFunction& f) const;       // <f, b_i>_psi
    GraphFunction project(const GraphFunction& f) const;            // sum <f,b_i> b_i
    // ||u - P u||_psi / max(||u||_psi, 1)
    double membership_residual(const GraphFunction& u) const;

    // materialized basis element i (synthesized for Full/Interior modes)
    GraphFunction basis_element(int i) const;

private:
    enum class Mode { Full, Interior, Dense } mode_ = Mode::Full;
    const WeightedGraph* g_ = nullptr;
    int n_ = 0, dim_ = 0;
    std::vector<int> verts_;                  // Interior
    std::vector<GraphFunction> basis_;        // Dense
};

using ConstraintSubspace = Subspace;

// Constraint matrix realizing C0^m(Omega) on the zero-extended functions:
// u = 0 on the boundary, and for 1 <= i < m either all incident differences
// of Delta^{(i-1)/2} u vanish at each boundary vertex (odd i) or
// Delta^{i/2} u = 0 there (even i). Columns indexed by omega.
linalg::Mat constraint_matrix(const WeightedGraph& g, const DomainSpec& dom, int m,
                              bool interior_only_boundary_differences = false);

// Null space of the constraint matrix as a psi-orthonormal Subspace. Throws
// "no admissible nonzero functions" when trivial. m == 1 takes the exact
// interior-indicator fast path.
Subspace constraint_subspace(const WeightedGraph& g, const DomainSpec& dom, int m,
                             bool interior_only_boundary_differences = false);

} // namespace grapde
