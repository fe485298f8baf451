#include "grapde/calculus.hpp"

#include "grapde/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grapde {

namespace {

void require_order(int m) {
    if (m < 1) throw std::invalid_argument("gradient order m must be >= 1");
}

void require_exponent(double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("exponent p must be >= 2 (p in (1,2) is out of scope)");
}

// Delta^k u
GraphFunction iterate_laplacian(const WeightedGraph& g, GraphFunction u, int k) {
    GraphFunction tmp(g.n);
    for (int i = 0; i < k; ++i) {
        kernels::laplacian(g, u, tmp);
        std::swap(u, tmp);
    }
    return u;
}

} // namespace

GraphFunction laplacian(const WeightedGraph& g, const GraphFunction& u) {
    check_function(g, u, "laplacian");
    GraphFunction out(g.n);
    kernels::laplacian(g, u, out);
    return out;
}

GraphFunction gamma_form(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v) {
    check_function(g, u, "gamma");
    check_function(g, v, "gamma");
    GraphFunction out(g.n);
    kernels::gamma(g, u, v, out);
    return out;
}

GraphFunction grad_norm(const WeightedGraph& g, const GraphFunction& u) {
    check_function(g, u, "grad_norm");
    GraphFunction out(g.n);
    kernels::grad_norm(g, u, out);
    return out;
}

GraphFunction m_grad_norm(const WeightedGraph& g, const GraphFunction& u, int m) {
    require_order(m);
    check_function(g, u, "m_grad_norm");
    GraphFunction a = iterate_laplacian(g, u, (m % 2 == 1) ? (m - 1) / 2 : m / 2);
    GraphFunction out(g.n);
    if (m % 2 == 1) {
        kernels::grad_norm(g, a, out);
    } else {
        for (int x = 0; x < g.n; ++x) out[x] = std::abs(a[x]);
    }
    return out;
}

GraphFunction p_laplacian(const WeightedGraph& g, const GraphFunction& u, double p) {
    require_exponent(p);
    check_function(g, u, "p_laplacian");
    if (p == 2.0) return laplacian(g, u);
    GraphFunction t(g.n), c(g.n), out(g.n);
    kernels::grad_norm(g, u, t);
    for (int x = 0; x < g.n; ++x) c[x] = std::pow(t[x], p - 2.0);
    kernels::edge_weighted(g, c, u, out);
    return out;
}

double poly_pairing(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& phi,
                    int m, double p, std::span<const char> mask) {
    require_order(m);
    require_exponent(p);
    check_function(g, u, "poly_pairing");
    check_function(g, phi, "poly_pairing");
    const bool odd = (m % 2 == 1);
    const int k = odd ? (m - 1) / 2 : m / 2;
    GraphFunction a = iterate_laplacian(g, u, k);
    GraphFunction b = iterate_laplacian(g, phi, k);
    GraphFunction t(g.n);
    if (odd)
        kernels::grad_norm(g, a, t);
    else
        for (int x = 0; x < g.n; ++x) t[x] = std::abs(a[x]);

    GraphFunction integrand(g.n);
    if (odd) {
        GraphFunction gab(g.n);
        kernels::gamma(g, a, b, gab);
        for (int x = 0; x < g.n; ++x)
            integrand[x] = (p == 2.0 ? gab[x] : std::pow(t[x], p - 2.0) * gab[x]);
    } else {
        for (int x = 0; x < g.n; ++x)
            integrand[x] = (p == 2.0 ? a[x] * b[x] : std::pow(t[x], p - 2.0) * a[x] * b[x]);
    }
    return mask.empty() ? integral(g, integrand) : integral_masked(g, integrand, mask);
}

GraphFunction poly_energy_gradient(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                                   std::span<const char> mask) {
    require_order(m);
    require_exponent(p);
    check_function(g, u, "poly_energy_gradient");
    const bool odd = (m % 2 == 1);
    const int k = odd ? (m - 1) / 2 : m / 2;
    GraphFunction a = iterate_laplacian(g, u, k);
    auto masked = [&](int x) { return mask.empty() || mask[x]; };

    GraphFunction out(g.n);
    if (odd) {
        GraphFunction c(g.n);
        if (p == 2.0) {
            for (int x = 0; x < g.n; ++x) c[x] = masked(x) ? 1.0 : 0.0;
        } else {
            GraphFunction t(g.n);
            kernels::grad_norm(g, a, t);
            for (int x = 0; x < g.n; ++x) c[x] = masked(x) ? std::pow(t[x], p - 2.0) : 0.0;
        }
        GraphFunction aw(g.n);
        kernels::edge_weighted(g, c, a, aw);
        for (int x = 0; x < g.n; ++x) aw[x] = -aw[x];
        out = iterate_laplacian(g, std::move(aw), k);
    } else {
        GraphFunction c(g.n);
        for (int x = 0; x < g.n; ++x) {
            if (!masked(x)) { c[x] = 0.0; continue; }
            c[x] = (p == 2.0 ? a[x] : std::pow(std::abs(a[x]), p - 2.0) * a[x]);
        }
        out = iterate_laplacian(g, std::move(c), k);
    }
    return out;
}

GraphFunction poly_apply(const WeightedGraph& g, const GraphFunction& u, int m, double p) {
    // L_{m,p} u is exactly the unmasked energy gradient of (1/p) int |grad^m u|^p
    return poly_energy_gradient(g, u, m, p);
}

double norm_lp(const WeightedGraph& g, const GraphFunction& u, double s, std::span<const char> mask) {
    if (!(s > 0.0)) throw std::invalid_argument("norm_lp: exponent must be positive");
    check_function(g, u, "norm_lp");
    GraphFunction v(g.n);
    for (int x = 0; x < g.n; ++x) v[x] = std::pow(std::abs(u[x]), s);
    double I = mask.empty() ? integral(g, v) : integral_masked(g, v, mask);
    return std::pow(I, 1.0 / s);
}

double norm_linf(const WeightedGraph& g, const GraphFunction& u) {
    check_function(g, u, "norm_linf");
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

double norm_sobolev_v(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                      const GraphFunction& h) {
    require_order(m);
    if (!(p > 1.0)) throw std::invalid_argument("sobolev norm: p must be > 1");
    check_function(g, h, "sobolev weight h");
    for (int x = 0; x < g.n; ++x)
        if (!(h[x] > 0.0))
            throw std::invalid_argument("sobolev weight h must be positive (vertex " +
                                        std::to_string(x) + ")");
    GraphFunction t = m_grad_norm(g, u, m);
    GraphFunction v(g.n);
    for (int x = 0; x < g.n; ++x)
        v[x] = std::pow(t[x], p) + h[x] * std::pow(std::abs(u[x]), p);
    return std::pow(integral(g, v), 1.0 / p);
}

double norm_eigen_h(const WeightedGraph& g, const GraphFunction& u, int m) {
    GraphFunction ones(g.n, 1.0);
    return norm_sobolev_v(g, u, m, 2.0, ones);
}

double norm_sobolev_omega(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                          const DomainSpec& dom) {
    require_order(m);
    if (!(p > 1.0)) throw std::invalid_argument("sobolev norm: p must be > 1");
    check_function(g, u, "norm_sobolev_omega");
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        GraphFunction t = (k == 0) ? u : m_grad_norm(g, u, k);
        GraphFunction v(g.n);
        for (int x = 0; x < g.n; ++x) v[x] = std::pow(std::abs(t[x]), p);
        acc += integral_masked(g, v, dom.in_omega);
    }
    return std::pow(acc, 1.0 / p);
}

double norm_sobolev_zero(const WeightedGraph& g, const GraphFunction& u, int m, double p,
                         const DomainSpec& dom) {
    require_order(m);
    if (!(p > 1.0)) throw std::invalid_argument("sobolev norm: p must be > 1");
    GraphFunction t = m_grad_norm(g, u, m);
    GraphFunction v(g.n);
    for (int x = 0; x < g.n; ++x) v[x] = std::pow(t[x], p);
    return std::pow(integral_masked(g, v, dom.in_omega), 1.0 / p);
}

double norm_sobolev(const WeightedGraph& g, const GraphFunction& u, const SobolevSpec& spec) {
    if (spec.domain) return norm_sobolev_zero(g, u, spec.m, spec.p, *spec.domain);
    if (!spec.h) throw std::invalid_argument("whole-graph sobolev norm needs the weight h");
    return norm_sobolev_v(g, u, spec.m, spec.p, *spec.h);
}

// ---- Subspace ---------------------------------------------------------------

Subspace Subspace::full(const WeightedGraph& g) {
    Subspace s;
    s.mode_ = Mode::Full;
    s.g_ = &g;
    s.n_ = g.n;
    s.dim_ = g.n;
    return s;
}

Subspace Subspace::interior(const WeightedGraph& g, std::vector<int> verts) {
    Subspace s;
    s.mode_ = Mode::Interior;
    s.g_ = &g;
    s.n_ = g.n;
    s.verts_ = std::move(verts);
    s.dim_ = static_cast<int>(s.verts_.size());
    return s;
}

Subspace Subspace::span(const WeightedGraph& g, std::vector<GraphFunction> raw_basis) {
    Subspace s;
    s.mode_ = Mode::Dense;
    s.g_ = &g;
    s.n_ = g.n;
    // modified Gram-Schmidt under <.,.>_psi, two passes, drop near-zero vectors
    std::vector<GraphFunction> basis;
    for (GraphFunction v : raw_basis) {
        for (int pass = 0; pass < 2; ++pass)
            for (const GraphFunction& b : basis) {
                GraphFunction prod(g.n);
                for (int x = 0; x < g.n; ++x) prod[x] = v[x] * b[x];
                double c = integral(g, prod);
                for (int x = 0; x < g.n; ++x) v[x] -= c * b[x];
            }
        GraphFunction sq(g.n);
        for (int x = 0; x < g.n; ++x) sq[x] = v[x] * v[x];
        double nrm = std::sqrt(integral(g, sq));
        if (nrm < 1e-12) continue;
        for (int x = 0; x < g.n; ++x) v[x] /= nrm;
        basis.push_back(std::move(v));
    }
    s.basis_ = std::move(basis);
    s.dim_ = static_cast<int>(s.basis_.size());
    return s;
}

GraphFunction Subspace::decode(std::span<const double> coords) const {
    if (static_cast<int>(coords.size()) != dim_)
        throw std::invalid_argument("Subspace::decode: coordinate length mismatch");
    GraphFunction u(n_, 0.0);
    switch (mode_) {
    case Mode::Full:
        for (int x = 0; x < n_; ++x) u[x] = coords[x] / std::sqrt(g_->measure[x]);
        break;
    case Mode::Interior:
        for (int i = 0; i < dim_; ++i)
            u[verts_[i]] = coords[i] / std::sqrt(g_->measure[verts_[i]]);
        break;
    case Mode::Dense:
        for (int i = 0; i < dim_; ++i)
            for (int x = 0; x < n_; ++x) u[x] += coords[i] * basis_[i][x];
        break;
    }
    return u;
}

std::vector<double> Subspace::encode(const GraphFunction& f) const {
    std::vector<double> c(dim_, 0.0);
    switch (mode_) {
    case Mode::Full:
        for (int x = 0; x < n_; ++x) c[x] = f[x] * std::sqrt(g_->measure[x]);
        break;
    case Mode::Interior:
        for (int i = 0; i < dim_; ++i)
            c[i] = f[verts_[i]] * std::sqrt(g_->measure[verts_[i]]);
        break;
    case Mode::Dense:
        for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int x = 0; x < n_; ++x) s += g_->measure[x] * f[x] * basis_[i][x];
            c[i] = s;
        }
        break;
    }
    return c;
}

GraphFunction Subspace::project(const GraphFunction& f) const {
    if (mode_ == Mode::Full) return f;
    return decode(encode(f));
}

double Subspace::membership_residual(const GraphFunction& u) const {
    GraphFunction pu = project(u);
    double num = 0.0, den = 0.0;
    for (int x = 0; x < n_; ++x) {
        double d = u[x] - pu[x];
        num += g_->measure[x] * d * d;
        den += g_->measure[x] * u[x] * u[x];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1.0);
}

GraphFunction Subspace::basis_element(int i) const {
    std::vector<double> c(dim_, 0.0);
    c[i] = 1.0;
    return decode(c);
}

linalg::Mat constraint_matrix(const WeightedGraph& g, const DomainSpec& dom, int m,
                              bool interior_only) {
    require_order(m);
    const int cols = static_cast<int>(dom.omega.size());
    std::vector<int> col_of(g.n, -1);
    for (int j = 0; j < cols; ++j) col_of[dom.omega[j]] = j;

    // D[k] = Delta^k applied to zero-extended unit columns, values on all of V
    int kmax = 0;
    for (int i = 1; i < m; ++i) kmax = std::max(kmax, (i % 2 == 1) ? (i - 1) / 2 : i / 2);
    std::vector<linalg::Mat> D(kmax + 1, linalg::Mat(g.n, cols));
    for (int j = 0; j < cols; ++j) D[0].at(dom.omega[j], j) = 1.0;
    GraphFunction col(g.n), out(g.n);
    for (int k = 1; k <= kmax; ++k)
        for (int j = 0; j < cols; ++j) {
            for (int x = 0; x < g.n; ++x) col[x] = D[k - 1].at(x, j);
            kernels::laplacian(g, col, out);
            for (int x = 0; x < g.n; ++x) D[k].at(x, j) = out[x];
        }

    std::vector<std::vector<double>> rows;
    auto push_row = [&](const std::vector<double>& r) { rows.push_back(r); };

    // u = 0 on the boundary
    for (int x : dom.boundary) {
        std::vector<double> r(cols, 0.0);
        r[col_of[x]] = 1.0;
        push_row(r);
    }
    for (int i = 1; i < m; ++i) {
        if (i % 2 == 1) {
            // |grad^i u| = 0 at x: every incident difference of w = Delta^{(i-1)/2} u vanishes
            int k = (i - 1) / 2;
            for (int x : dom.boundary)
                for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
                    int y = g.adj_vtx[e];
                    if (interior_only && !dom.in_omega[y]) continue;
                    std::vector<double> r(cols, 0.0);
                    for (int j = 0; j < cols; ++j) r[j] = D[k].at(y, j) - D[k].at(x, j);
                    push_row(r);
                }
        } else {
            int k = i / 2;
            for (int x : dom.boundary) {
                std::vector<double> r(cols, 0.0);
                for (int j = 0; j < cols; ++j) r[j] = D[k].at(x, j);
                push_row(r);
            }
        }
    }

    linalg::Mat C(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < C.rows; ++i)
        for (int j = 0; j < cols; ++j) C.at(i, j) = rows[i][j];
    return C;
}

Subspace constraint_subspace(const WeightedGraph& g, const DomainSpec& dom, int m,
                             bool interior_only) {
    require_order(m);
    if (dom.interior.empty())
        throw std::invalid_argument("constraint_subspace: domain has empty interior");
    if (m == 1) return Subspace::interior(g, dom.interior);

    linalg::Mat C = constraint_matrix(g, dom, m, interior_only);
    linalg::Mat N = (C.rows == 0) ? [&] {
        linalg::Mat I(static_cast<int>(dom.omega.size()), static_cast<int>(dom.omega.size()));
        for (int i = 0; i < I.rows; ++i) I.at(i, i) = 1.0;
        return I;
    }()
                                  : linalg::nullspace(C);
    if (N.cols == 0)
        throw std::runtime_error("constraint_subspace: no admissible nonzero functions");
    std::vector<GraphFunction> basis;
    for (int j = 0; j < N.cols; ++j) {
        GraphFunction b(g.n, 0.0);
        for (int i = 0; i < N.rows; ++i) b[dom.omega[i]] = N.at(i, j);
        basis.push_back(std::move(b));
    }
    return Subspace::span(g, std::move(basis));
}

} // namespace grapde
