#include "grapde/spectral.hpp"

#include "grapde/kernels.hpp"
#include "grapde/linalg.hpp"
#include "grapde/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace grapde {

namespace {

double dot_psi(const WeightedGraph& g, const GraphFunction& a, const GraphFunction& b) {
    double s = 0.0;
    for (int x = 0; x < g.n; ++x) s += g.measure[x] * a[x] * b[x];
    return s;
}

// FNV-1a over the raw coordinate bytes; deterministic tie-break for
// multi-start reductions.
std::uint64_t witness_hash(const std::vector<double>& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : c) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

// Rayleigh-quotient minimization of int Gamma(u,u) / int u^2 over the
// psi-orthogonal complement of constants, by steepest descent with exact
// two-dimensional subspace minimization.
double rayleigh_lambda1(const WeightedGraph& g, GraphFunction start, int max_iter) {
    const double vol = g.volume();
    auto deflate = [&](GraphFunction& u) {
        double mean = integral(g, u) / vol;
        for (double& v : u) v -= mean;
    };
    GraphFunction u = std::move(start);
    deflate(u);
    double nrm = std::sqrt(dot_psi(g, u, u));
    if (nrm < 1e-300) {
        u.assign(g.n, 0.0);
        u[0] = 1.0;
        deflate(u);
        nrm = std::sqrt(dot_psi(g, u, u));
    }
    for (double& v : u) v /= nrm;

    GraphFunction Lu(g.n), Lg(g.n);
    double R = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        kernels::laplacian(g, u, Lu);
        for (int x = 0; x < g.n; ++x) Lu[x] = -Lu[x]; // -Delta u
        R = dot_psi(g, u, Lu);
        GraphFunction r(g.n);
        for (int x = 0; x < g.n; ++x) r[x] = Lu[x] - R * u[x];
        deflate(r);
        double rn = std::sqrt(dot_psi(g, r, r));
        if (rn <= 1e-13 * std::max(1.0, R)) break;
        for (double& v : r) v /= rn;
        // project out u to get an orthonormal 2D frame {u, r}
        double c = dot_psi(g, u, r);
        for (int x = 0; x < g.n; ++x) r[x] -= c * u[x];
        double rn2 = std::sqrt(dot_psi(g, r, r));
        if (rn2 < 1e-300) break;
        for (double& v : r) v /= rn2;

        kernels::laplacian(g, r, Lg);
        for (int x = 0; x < g.n; ++x) Lg[x] = -Lg[x];
        double a11 = R;
        double a12 = dot_psi(g, u, Lg);
        double a22 = dot_psi(g, r, Lg);
        // smallest eigenvalue of [[a11,a12],[a12,a22]] (B = I in this frame)
        double tr = a11 + a22, det = a11 * a22 - a12 * a12;
        double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        double mu = tr / 2.0 - disc;
        // eigenvector (alpha, beta)
        double alpha, beta;
        if (std::abs(a12) > 1e-300) {
            alpha = a12;
            beta = mu - a11;
        } else {
            alpha = (a11 <= a22) ? 1.0 : 0.0;
            beta = (a11 <= a22) ? 0.0 : 1.0;
        }
        double len = std::sqrt(alpha * alpha + beta * beta);
        alpha /= len;
        beta /= len;
        for (int x = 0; x < g.n; ++x) u[x] = alpha * u[x] + beta * r[x];
        deflate(u);
        double un = std::sqrt(dot_psi(g, u, u));
        for (double& v : u) v /= un;
    }
    kernels::laplacian(g, u, Lu);
    for (int x = 0; x < g.n; ++x) Lu[x] = -Lu[x];
    return dot_psi(g, u, Lu) / dot_psi(g, u, u);
}

} // namespace

EigenData first_eigenvalue(const WeightedGraph& g) {
    if (!g.connected) throw std::invalid_argument("first_eigenvalue: graph must be connected");

    // route (a): dense symmetric psi-normalized operator
    linalg::Mat S(g.n, g.n);
    for (int x = 0; x < g.n; ++x) {
        S.at(x, x) = 1.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            S.at(x, y) = -g.adj_w[e] / std::sqrt(g.measure[x] * g.measure[y]);
        }
    }
    std::vector<double> ev;
    linalg::Mat V;
    linalg::jacobi_eigh(S, ev, V);

    double diam = std::max(ev.back() - ev.front(), 1e-30);
    double zero_tol = 1e-9 * std::max(1.0, diam);
    int i0 = 0;
    while (i0 < g.n && ev[i0] <= zero_tol) ++i0;
    if (i0 == 0 || i0 >= g.n)
        throw std::runtime_error("first_eigenvalue: spectrum has no clear zero mode");

    EigenData out;
    out.spectrum = ev;
    out.lambda1 = ev[i0];
    out.cluster_tol = 1e-8 * diam;
    std::vector<GraphFunction> raw;
    for (int j = i0; j < g.n && ev[j] - out.lambda1 <= out.cluster_tol; ++j) {
        GraphFunction b(g.n);
        for (int x = 0; x < g.n; ++x) b[x] = V.at(x, j) / std::sqrt(g.measure[x]);
        // polish the mean-zero identity, then renormalize below via span()
        double mean = integral(g, b) / g.volume();
        for (double& v : b) v -= mean;
        raw.push_back(std::move(b));
    }
    Subspace sp = Subspace::span(g, raw);
    out.multiplicity = sp.dim();
    for (int i = 0; i < sp.dim(); ++i) out.basis.push_back(sp.basis_element(i));

    // route (b): Rayleigh minimization, reconciled
    GraphFunction start(g.n);
    for (int x = 0; x < g.n; ++x) start[x] = (x % 2 == 0 ? 1.0 : -1.0) + 0.01 * (x + 1);
    out.rayleigh_value = rayleigh_lambda1(g, std::move(start), 4000);
    if (std::abs(out.rayleigh_value - out.lambda1) > 1e-7 * std::max(1.0, out.lambda1))
        throw std::runtime_error("first_eigenvalue: Rayleigh route disagrees with dense route (" +
                                 std::to_string(out.rayleigh_value) + " vs " +
                                 std::to_string(out.lambda1) + ")");
    return out;
}

EmbeddingConstant sobolev_constant_cstar(const WeightedGraph& g, const EigenData& eig, int m,
                                         double q, int origin) {
    if (!(q > 0.0)) throw std::invalid_argument("sobolev_constant_cstar: q must be positive");
    if (m < 1) throw std::invalid_argument("sobolev_constant_cstar: m must be >= 1");
    if (origin < 0 || origin >= g.n)
        throw std::invalid_argument("sobolev_constant_cstar: origin out of range");

    std::vector<int> rho_int = distance_field(g, origin);
    GraphFunction rho(g.n);
    double rho_max = 0.0;
    for (int x = 0; x < g.n; ++x) {
        rho[x] = static_cast<double>(rho_int[x]);
        rho_max = std::max(rho_max, rho[x]);
    }
    double rho_q = norm_lp(g, rho, q);
    double w0 = g.min_weight();
    double psi0 = g.min_measure();
    double psiO = g.measure[origin];
    double lam = eig.lambda1;

    EmbeddingConstant c;
    c.kind = "analytic-cstar";
    c.m = m;
    c.q = q;
    c.origin = origin;
    c.formula_faithful_only = (q < 1.0);
    double mx = std::max(rho_q, std::pow(psiO, 1.0 / q));
    c.term_path = 2.0 * std::sqrt(2.0) * std::pow(lam, (1.0 - m) / 2.0) / std::sqrt(w0) * rho_q;
    c.term_origin = std::pow(2.0, 1.0 / q + 1.0) * mx / std::sqrt(psiO);
    c.term_even = std::pow(2.0, 1.0 / q) * mx / std::sqrt(psi0 * (std::pow(lam, m) + 1.0));
    c.value = std::max({c.term_path, c.term_origin, c.term_even});
    c.linf_constant =
        std::max(std::sqrt(2.0) * std::pow(lam, (1.0 - m) / 2.0) / std::sqrt(w0) * rho_max +
                     1.0 / std::sqrt(psiO),
                 1.0 / std::sqrt(psi0 * (std::pow(lam, m) + 1.0)));
    return c;
}

EmbeddingConstant sobolev_constant_cstar(const WeightedGraph& g, int m, double q, int origin) {
    return sobolev_constant_cstar(g, first_eigenvalue(g), m, q, origin);
}

double eigenspace_power_identity(const WeightedGraph& g, const EigenData& eig, int m, int samples,
                                 std::uint64_t seed) {
    auto deviation = [&](const GraphFunction& u) {
        GraphFunction t = m_grad_norm(g, u, m);
        GraphFunction t2(g.n), u2(g.n);
        for (int x = 0; x < g.n; ++x) {
            t2[x] = t[x] * t[x];
            u2[x] = u[x] * u[x];
        }
        double lhs = integral(g, t2);
        double rhs = std::pow(eig.lambda1, m) * integral(g, u2);
        double den = std::max(std::abs(rhs), 1e-300);
        if (std::abs(lhs) < 1e-300 && std::abs(rhs) < 1e-300) return 0.0;
        return std::abs(lhs - rhs) / den;
    };
    double worst = 0.0;
    for (const GraphFunction& b : eig.basis) worst = std::max(worst, deviation(b));
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        GraphFunction u(g.n, 0.0);
        for (const GraphFunction& b : eig.basis) {
            double c = rng.uniform(-1.0, 1.0);
            for (int x = 0; x < g.n; ++x) u[x] += c * b[x];
        }
        worst = std::max(worst, deviation(u));
    }
    return worst;
}

namespace {

struct RatioProblem {
    const WeightedGraph* g;
    const Subspace* space;
    std::span<const char> mask;   // empty = whole graph
    int m;
    double p;
    const GraphFunction* weight;  // denominator weight
    const GraphFunction* h;       // numerator zero-order weight, may be null

    double numerator(const GraphFunction& u) const {
        GraphFunction t = m_grad_norm(*g, u, m);
        GraphFunction v(g->n);
        for (int x = 0; x < g->n; ++x) {
            v[x] = std::pow(t[x], p);
            if (h) v[x] += (*h)[x] * std::pow(std::abs(u[x]), p);
        }
        return mask.empty() ? integral(*g, v) : integral_masked(*g, v, mask);
    }
    double denominator(const GraphFunction& u) const {
        GraphFunction v(g->n);
        for (int x = 0; x < g->n; ++x) v[x] = (*weight)[x] * std::pow(std::abs(u[x]), p);
        return mask.empty() ? integral(*g, v) : integral_masked(*g, v, mask);
    }
    GraphFunction num_gradient(const GraphFunction& u) const {
        GraphFunction gr = poly_energy_gradient(*g, u, m, p, mask);
        for (int x = 0; x < g->n; ++x) {
            gr[x] *= p;
            if (h && (mask.empty() || mask[x]))
                gr[x] += p * (*h)[x] * std::pow(std::abs(u[x]), p - 2.0) * u[x];
        }
        return gr;
    }
    GraphFunction den_gradient(const GraphFunction& u) const {
        GraphFunction gr(g->n, 0.0);
        for (int x = 0; x < g->n; ++x)
            if (mask.empty() || mask[x])
                gr[x] = p * (*weight)[x] * std::pow(std::abs(u[x]), p - 2.0) * u[x];
        return gr;
    }
};

struct RatioRun {
    bool ok = false;
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> coords;
};

RatioRun minimize_ratio_from(const RatioProblem& prob, std::vector<double> c, int max_iter,
                             double grad_tol) {
    RatioRun run;
    const Subspace& sp = *prob.space;
    auto renorm = [&](std::vector<double>& cc) {
        GraphFunction u = sp.decode(cc);
        double D = prob.denominator(u);
        if (!(D > 1e-300)) return false;
        double s = std::pow(D, -1.0 / prob.p);
        for (double& v : cc) v *= s;
        return true;
    };
    if (!renorm(c)) return run;

    double R = prob.numerator(sp.decode(c));
    int flat = 0;
    for (int it = 0; it < max_iter; ++it) {
        GraphFunction u = sp.decode(c);
        GraphFunction gn = prob.num_gradient(u);
        GraphFunction gd = prob.den_gradient(u);
        GraphFunction gr(prob.g->n);
        for (int x = 0; x < prob.g->n; ++x) gr[x] = gn[x] - R * gd[x];
        std::vector<double> gc = sp.encode(gr);
        double gnorm = 0.0;
        for (double v : gc) gnorm += v * v;
        gnorm = std::sqrt(gnorm);
        if (gnorm <= grad_tol * std::max(1.0, std::abs(R))) break;

        double alpha = 1.0 / std::max(1.0, gnorm);
        bool moved = false;
        double Rn = R;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cn(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) cn[i] = c[i] - alpha * gc[i];
            if (renorm(cn)) {
                Rn = prob.numerator(sp.decode(cn));
                if (Rn <= R - 1e-4 * alpha * gnorm * gnorm) {
                    c = std::move(cn);
                    moved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!moved) break;
        // plateau guard: the sufficient-decrease threshold underflows when
        // the gradient is tiny
        if (R - Rn <= 1e-15 * (1.0 + std::abs(R)))
            ++flat;
        else
            flat = 0;
        R = Rn;
        if (flat > 30) break;
    }
    run.ok = true;
    run.value = R;
    run.coords = std::move(c);
    return run;
}

// smallest eigenvalue of A c = mu B c with SPD B, via B^{-1/2} A B^{-1/2}
double smallest_generalized_eig(const linalg::Mat& A, const linalg::Mat& B) {
    std::vector<double> eb;
    linalg::Mat VB;
    linalg::jacobi_eigh(B, eb, VB);
    if (eb.front() <= 0.0)
        throw std::runtime_error("generalized eigenproblem: mass matrix not positive definite");
    const int d = A.rows;
    linalg::Mat Bih(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += VB.at(i, k) * VB.at(j, k) / std::sqrt(eb[k]);
            Bih.at(i, j) = s;
        }
    linalg::Mat M = linalg::matmul(Bih, linalg::matmul(A, Bih));
    // symmetrize against rounding
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            double v = 0.5 * (M.at(i, j) + M.at(j, i));
            M.at(i, j) = M.at(j, i) = v;
        }
    std::vector<double> em;
    linalg::Mat VM;
    linalg::jacobi_eigh(M, em, VM);
    return em.front();
}

} // namespace

RayleighResult weighted_rayleigh_inf(const WeightedGraph& g,
                                     const std::optional<DomainSpec>& domain, int m, double p,
                                     const GraphFunction& weight,
                                     const std::optional<GraphFunction>& h,
                                     const RayleighOptions& opts) {
    if (!(p >= 2.0)) throw std::invalid_argument("weighted_rayleigh_inf: p must be >= 2");
    check_function(g, weight, "rayleigh weight");
    if (h) check_function(g, *h, "rayleigh h");
    if (!domain && !h)
        throw std::invalid_argument("weighted_rayleigh_inf: global variant needs h");

    Subspace sp = domain ? constraint_subspace(g, *domain, m) : Subspace::full(g);
    RatioProblem prob{&g,
                      &sp,
                      domain ? std::span<const char>(domain->in_omega) : std::span<const char>(),
                      m,
                      p,
                      &weight,
                      h ? &*h : nullptr};

    std::vector<std::vector<double>> starts;
    {
        std::vector<double> e0(sp.dim(), 0.0);
        e0[0] = 1.0;
        starts.push_back(std::move(e0));
        std::vector<double> ones(sp.dim(), 1.0);
        for (int i = 0; i < sp.dim(); ++i) ones[i] += 1e-3 * (i + 1);
        starts.push_back(std::move(ones));
        Rng rng(opts.seed);
        for (int s = 2; s < opts.multi_start; ++s) {
            Rng fr = rng.fork(s);
            std::vector<double> c(sp.dim());
            for (double& v : c) v = fr.uniform(-1.0, 1.0);
            starts.push_back(std::move(c));
        }
    }

    RatioRun best;
    std::uint64_t best_hash = 0;
    bool any_feasible = false;
    for (auto& c0 : starts) {
        RatioRun run = minimize_ratio_from(prob, c0, opts.max_iter, opts.grad_tol);
        if (!run.ok) {
            // a flipped start sometimes lands in the feasible cone
            for (double& v : c0) v = -v;
            run = minimize_ratio_from(prob, c0, opts.max_iter, opts.grad_tol);
        }
        if (!run.ok) continue;
        any_feasible = true;
        std::uint64_t hsh = witness_hash(run.coords);
        if (run.value < best.value || (run.value == best.value && hsh < best_hash)) {
            best = run;
            best_hash = hsh;
        }
    }
    if (!any_feasible)
        throw std::runtime_error("weighted_rayleigh_inf: weight incompatible (denominator "
                                 "nonpositive for every admissible start)");

    RayleighResult res;
    res.value = best.value;
    res.witness = sp.decode(best.coords);

    if (p == 2.0 && m == 1) {
        bool weight_pos = true;
        auto on_set = [&](int x) { return !domain || domain->in_omega[x]; };
        for (int x = 0; x < g.n; ++x)
            if (on_set(x) && !(weight[x] > 0.0)) weight_pos = false;
        if (weight_pos && sp.dim() <= 600) {
            const int d = sp.dim();
            linalg::Mat A(d, d), B(d, d);
            std::vector<GraphFunction> bs(d);
            for (int i = 0; i < d; ++i) bs[i] = sp.basis_element(i);
            for (int i = 0; i < d; ++i) {
                GraphFunction gi = prob.num_gradient(bs[i]); // = 2*(quadratic form row) for p=2
                GraphFunction di = prob.den_gradient(bs[i]);
                for (int j = 0; j < d; ++j) {
                    A.at(i, j) = 0.5 * dot_psi(g, gi, bs[j]);
                    B.at(i, j) = 0.5 * dot_psi(g, di, bs[j]);
                }
            }
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    double a = 0.5 * (A.at(i, j) + A.at(j, i));
                    A.at(i, j) = A.at(j, i) = a;
                    double b = 0.5 * (B.at(i, j) + B.at(j, i));
                    B.at(i, j) = B.at(j, i) = b;
                }
            res.oracle_value = smallest_generalized_eig(A, B);
            res.oracle_ran = true;
            if (std::abs(res.oracle_value - res.value) > 1e-7 * std::max(1.0, std::abs(res.oracle_value)))
                throw std::runtime_error(
                    "weighted_rayleigh_inf: projected gradient disagrees with generalized "
                    "eigenproblem oracle (" + std::to_string(res.value) + " vs " +
                    std::to_string(res.oracle_value) + ")");
        }
    }
    return res;
}

EmbeddingConstant empirical_embedding_constant(const WeightedGraph& g, const SobolevSpec& spec,
                                               double target_q, const RayleighOptions& opts) {
    const bool qinf = !(target_q > 0.0) || std::isinf(target_q);
    Subspace sp = spec.domain ? constraint_subspace(g, *spec.domain, spec.m) : Subspace::full(g);
    std::span<const char> mask =
        spec.domain ? std::span<const char>(spec.domain->in_omega) : std::span<const char>();

    auto spec_norm = [&](const GraphFunction& u) {
        if (spec.domain) return norm_sobolev_zero(g, u, spec.m, spec.p, *spec.domain);
        return norm_sobolev_v(g, u, spec.m, spec.p, *spec.h);
    };
    auto q_norm = [&](const GraphFunction& u) {
        return qinf ? norm_linf(g, u) : norm_lp(g, u, target_q, mask);
    };

    auto ratio = [&](const GraphFunction& u) {
        double s = spec_norm(u);
        return s > 0.0 ? q_norm(u) / s : 0.0;
    };

    // ascent on the ratio with renormalized spec norm
    auto ascend = [&](std::vector<double> c) {
        GraphFunction u = sp.decode(c);
        double S = spec_norm(u);
        if (!(S > 1e-300)) return std::pair<double, std::vector<double>>(0.0, c);
        for (double& v : c) v /= S;
        double Q = ratio(sp.decode(c));
        for (int it = 0; it < opts.max_iter; ++it) {
            u = sp.decode(c);
            double nq = q_norm(u);
            double ns = spec_norm(u);
            // d||u||_q and d||u||_spec as L2(psi) representations
            GraphFunction gq(g.n, 0.0);
            if (qinf) {
                int xs = 0;
                double best = -1.0;
                for (int x = 0; x < g.n; ++x)
                    if (std::abs(u[x]) > best) { best = std::abs(u[x]); xs = x; }
                gq[xs] = (u[xs] >= 0.0 ? 1.0 : -1.0) / g.measure[xs];
            } else {
                for (int x = 0; x < g.n; ++x)
                    if (mask.empty() || mask[x])
                        gq[x] = std::pow(nq, 1.0 - target_q) *
                                std::pow(std::abs(u[x]), target_q - 2.0) * u[x];
            }
            GraphFunction gs = poly_energy_gradient(g, u, spec.m, spec.p, mask);
            for (int x = 0; x < g.n; ++x) {
                gs[x] *= std::pow(ns, 1.0 - spec.p);
                if (!spec.domain && (mask.empty() || mask[x]))
                    gs[x] += std::pow(ns, 1.0 - spec.p) * (*spec.h)[x] *
                             std::pow(std::abs(u[x]), spec.p - 2.0) * u[x];
            }
            GraphFunction gr(g.n);
            for (int x = 0; x < g.n; ++x) gr[x] = (gq[x] * ns - nq * gs[x]) / (ns * ns);
            std::vector<double> gc = sp.encode(gr);
            double gn = 0.0;
            for (double v : gc) gn += v * v;
            gn = std::sqrt(gn);
            if (gn <= 1e-10 * std::max(1.0, Q)) break;
            double alpha = 0.5 / std::max(1.0, gn);
            bool moved = false;
            for (int bt = 0; bt < 50; ++bt) {
                std::vector<double> cn(c.size());
                for (std::size_t i = 0; i < c.size(); ++i) cn[i] = c[i] + alpha * gc[i];
                GraphFunction un = sp.decode(cn);
                double Sn = spec_norm(un);
                if (Sn > 1e-300) {
                    for (double& v : cn) v /= Sn;
                    double Qn = ratio(sp.decode(cn));
                    if (Qn > Q + 1e-14 * std::max(1.0, Q)) {
                        c = std::move(cn);
                        Q = Qn;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        return std::pair<double, std::vector<double>>(Q, c);
    };

    std::vector<std::vector<double>> starts;
    std::vector<double> e0(sp.dim(), 0.0);
    e0[0] = 1.0;
    starts.push_back(e0);
    std::vector<double> ones(sp.dim(), 1.0);
    starts.push_back(ones);
    Rng rng(opts.seed);
    for (int s = 2; s < opts.multi_start; ++s) {
        Rng fr = rng.fork(s);
        std::vector<double> c(sp.dim());
        for (double& v : c) v = fr.uniform(-1.0, 1.0);
        starts.push_back(std::move(c));
    }

    EmbeddingConstant out;
    out.kind = "empirical";
    out.m = spec.m;
    out.q = qinf ? std::numeric_limits<double>::infinity() : target_q;
    double best = -1.0;
    std::uint64_t best_hash = 0;
    for (auto& c0 : starts) {
        auto [Q, c] = ascend(c0);
        std::uint64_t hsh = witness_hash(c);
        if (Q > best || (Q == best && hsh < best_hash)) {
            best = Q;
            best_hash = hsh;
            out.witness = sp.decode(c);
        }
    }
    out.value = std::max(best, 0.0);
    return out;
}

CoupledConstant coupled_constant_s1(const WeightedGraph& g, const DomainSpec& dom, double p,
                                    double q, const RayleighOptions& opts) {
    if (!(p > 1.0) || !(q > 1.0)) throw std::invalid_argument("coupled_constant_s1: need p,q > 1");
    Subspace sp = constraint_subspace(g, dom, 1);
    const int d = sp.dim();
    std::span<const char> mask(dom.in_omega);

    auto split = [&](const std::vector<double>& c) {
        std::vector<double> cu(c.begin(), c.begin() + d), cv(c.begin() + d, c.end());
        return std::pair(sp.decode(cu), sp.decode(cv));
    };
    auto interaction = [&](const GraphFunction& u, const GraphFunction& v) {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = std::pow(std::abs(u[x]), p) * std::pow(std::abs(v[x]), q);
        return integral_masked(g, w, mask);
    };
    auto hnorm2 = [&](const GraphFunction& u, const GraphFunction& v) {
        GraphFunction tu = grad_norm(g, u), tv = grad_norm(g, v), w(g.n);
        for (int x = 0; x < g.n; ++x) w[x] = tu[x] * tu[x] + tv[x] * tv[x];
        return integral_masked(g, w, mask);
    };

    auto objective = [&](const std::vector<double>& c) {
        auto [u, v] = split(c);
        double I = interaction(u, v);
        if (!(I > 1e-300)) return std::numeric_limits<double>::infinity();
        return hnorm2(u, v) / std::pow(I, 2.0 / (p + q));
    };

    // numeric descent in the stacked coordinates (the objective is scale
    // invariant; normalize the pair norm each step)
    auto descend = [&](std::vector<double> c) {
        double f = objective(c);
        if (!std::isfinite(f)) return std::pair(f, c);
        const double eps = 1e-6;
        for (int it = 0; it < 400; ++it) {
            std::vector<double> grad(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                std::vector<double> cp = c, cm = c;
                cp[i] += eps;
                cm[i] -= eps;
                double fp = objective(cp), fm = objective(cm);
                if (!std::isfinite(fp) || !std::isfinite(fm)) { grad[i] = 0.0; continue; }
                grad[i] = (fp - fm) / (2.0 * eps);
            }
            double gn = 0.0;
            for (double v : grad) gn += v * v;
            gn = std::sqrt(gn);
            if (gn <= 1e-9 * std::max(1.0, f)) break;
            double alpha = 0.2 / std::max(1.0, gn);
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> cn(c.size());
                for (std::size_t i = 0; i < c.size(); ++i) cn[i] = c[i] - alpha * grad[i];
                double nrm = 0.0;
                for (double v : cn) nrm += v * v;
                nrm = std::sqrt(nrm);
                if (nrm > 1e-300)
                    for (double& v : cn) v /= nrm;
                double fn = objective(cn);
                if (fn < f - 1e-10) {
                    c = std::move(cn);
                    f = fn;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        return std::pair(f, c);
    };

    CoupledConstant out;
    double best = std::numeric_limits<double>::infinity();
    Rng rng(opts.seed);
    for (int s = 0; s < std::max(opts.multi_start, 4); ++s) {
        std::vector<double> c(2 * d);
        if (s == 0) {
            for (double& v : c) v = 1.0;
        } else {
            Rng fr = rng.fork(s);
            for (double& v : c) v = fr.uniform(0.1, 1.0); // positive cone starts
        }
        auto [f, copt] = descend(std::move(c));
        if (f < best) {
            best = f;
            auto [u, v] = split(copt);
            out.witness_u = u;
            out.witness_v = v;
        }
    }
    if (!std::isfinite(best))
        throw std::runtime_error("coupled_constant_s1: no admissible pair with positive interaction");
    out.value = best;
    return out;
}

} // namespace grapde
