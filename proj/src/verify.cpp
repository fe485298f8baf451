#include "grapde/verify.hpp"

#include "grapde/rng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace grapde {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_violated: return "hypothesis-violated";
    }
    return "?";
}

ResidualReport el_residual(const EnergyModel& model, const FunctionPair& pair) {
    PairSpace space = PairSpace::of(model);
    FunctionPair g = energy_gradient(model, pair);
    ResidualReport r;
    r.u = space.su.project(g.u);
    r.v = space.sv.project(g.v);
    for (double x : r.u) r.max_abs = std::max(r.max_abs, std::abs(x));
    for (double x : r.v) r.max_abs = std::max(r.max_abs, std::abs(x));
    return r;
}

namespace {

constexpr double kSlack = 1e-12;

// sup-normalize; returns the scale used (1 for the zero function)
double normalize_sup(GraphFunction& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    if (m == 0.0) return 1.0;
    for (double& v : u) v /= m;
    return m;
}

struct Propagation {
    bool consistent = true;     // no nonzero neighbor of a zero found
    bool covers_all = false;    // zero set propagated to every vertex
    int bad_zero = -1, bad_neighbor = -1;
};

Propagation propagate_zeros(const WeightedGraph& g, const GraphFunction& u, double zero_tol) {
    Propagation out;
    std::vector<char> zero(g.n, 0);
    std::queue<int> work;
    for (int x = 0; x < g.n; ++x)
        if (std::abs(u[x]) <= zero_tol) {
            zero[x] = 1;
            work.push(x);
        }
    if (work.empty()) return out; // nothing to propagate
    // neighbors of a zero are zeros; at most |V| rounds
    while (!work.empty()) {
        int x = work.front();
        work.pop();
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            if (zero[y]) continue;
            if (std::abs(u[y]) > zero_tol) {
                out.consistent = false;
                out.bad_zero = x;
                out.bad_neighbor = y;
                return out;
            }
            zero[y] = 1;
            work.push(y);
        }
    }
    out.covers_all = std::all_of(zero.begin(), zero.end(), [](char c) { return c != 0; });
    return out;
}

} // namespace

CheckReport smp_check(const WeightedGraph& g, const GraphFunction& u_in, const GraphFunction& v_in,
                      const GraphFunction& h1, const GraphFunction& h2, double p, double q) {
    CheckReport rep;
    rep.check = "strong-maximum-principle";
    rep.tolerance = kSlack;
    if (!(p >= 2.0) || !(q >= 2.0))
        throw std::invalid_argument("smp_check: p, q must be >= 2");
    if (!g.connected) throw std::invalid_argument("smp_check: graph must be connected");
    check_function(g, u_in, "smp u");
    check_function(g, v_in, "smp v");
    check_function(g, h1, "smp h1");
    check_function(g, h2, "smp h2");

    GraphFunction u = u_in, v = v_in;
    normalize_sup(u);
    normalize_sup(v);

    // nonnegativity hypotheses
    for (int x = 0; x < g.n; ++x) {
        if (u[x] < -kSlack || v[x] < -kSlack) {
            rep.verdict = Verdict::hypothesis_violated;
            rep.witness_vertices = {x};
            rep.witness_values = {u[x] < -kSlack ? u[x] : v[x]};
            rep.detail = (u[x] < -kSlack ? "u" : "v") + std::string(" < 0 at vertex ") +
                         std::to_string(x);
            return rep;
        }
    }
    // supersolution inequalities
    GraphFunction lpu = p_laplacian(g, u, p);
    GraphFunction lqv = p_laplacian(g, v, q);
    for (int x = 0; x < g.n; ++x) {
        double su = -lpu[x] + h1[x] * std::pow(std::abs(u[x]), p - 2.0) * u[x];
        if (su < -kSlack) {
            rep.verdict = Verdict::hypothesis_violated;
            rep.witness_vertices = {x};
            rep.witness_values = {su};
            rep.detail = "-Delta_p u + h1 |u|^{p-2} u = " + std::to_string(su) +
                         " < 0 at vertex " + std::to_string(x);
            return rep;
        }
    }
    for (int x = 0; x < g.n; ++x) {
        double sv = -lqv[x] + h2[x] * std::pow(std::abs(v[x]), q - 2.0) * v[x];
        if (sv < -kSlack) {
            rep.verdict = Verdict::hypothesis_violated;
            rep.witness_vertices = {x};
            rep.witness_values = {sv};
            rep.detail = "-Delta_q v + h2 |v|^{q-2} v = " + std::to_string(sv) +
                         " < 0 at vertex " + std::to_string(x);
            return rep;
        }
    }

    // zero propagation per component
    const double zero_tol = kSlack;
    bool u_has_zero = std::any_of(u.begin(), u.end(),
                                  [&](double x) { return std::abs(x) <= zero_tol; });
    bool v_has_zero = std::any_of(v.begin(), v.end(),
                                  [&](double x) { return std::abs(x) <= zero_tol; });
    std::string note;
    for (auto [f, has_zero, name] :
         {std::tuple<const GraphFunction*, bool, const char*>{&u, u_has_zero, "u"},
          std::tuple<const GraphFunction*, bool, const char*>{&v, v_has_zero, "v"}}) {
        if (!has_zero) {
            note += std::string(name) + " has no zero (strictly positive); ";
            continue;
        }
        Propagation pr = propagate_zeros(g, *f, zero_tol);
        if (!pr.consistent) {
            rep.verdict = Verdict::fail;
            rep.witness_vertices = {pr.bad_zero, pr.bad_neighbor};
            rep.witness_values = {(*f)[pr.bad_zero], (*f)[pr.bad_neighbor]};
            rep.detail = std::string(name) + " inconsistent: zero at vertex " +
                         std::to_string(pr.bad_zero) + " has nonzero neighbor " +
                         std::to_string(pr.bad_neighbor);
            return rep;
        }
        if (!pr.covers_all) {
            rep.verdict = Verdict::fail;
            rep.witness_vertices = {pr.bad_zero};
            rep.detail = std::string(name) + " zero set did not propagate to all of V";
            return rep;
        }
        note += std::string(name) + " propagated to identically 0; ";
    }
    rep.verdict = Verdict::pass;
    rep.detail = note;
    return rep;
}

CheckReport embedding_audit_eigenspace(const WeightedGraph& g, const EigenData& eig, int m,
                                       double q, int origin, int samples, std::uint64_t seed) {
    const bool qinf = !(q > 0.0) || std::isinf(q);
    EmbeddingConstant cst = sobolev_constant_cstar(g, eig, m, qinf ? 2.0 : q, origin);
    const double bound = qinf ? cst.linf_constant : cst.value;

    CheckReport rep;
    rep.check = qinf ? "embedding-audit-eigenspace-linf" : "embedding-audit-eigenspace";
    rep.tolerance = kSlack;
    rep.samples = samples;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        GraphFunction u(g.n, 0.0);
        for (const GraphFunction& b : eig.basis) {
            double c = rng.uniform(-1.0, 1.0);
            for (int x = 0; x < g.n; ++x) u[x] += c * b[x];
        }
        double hn = norm_eigen_h(g, u, m);
        if (hn < 1e-14) continue;
        for (double& x : u) x /= hn; // unit H-norm, slack is absolute
        double lhs = qinf ? norm_linf(g, u) : norm_lp(g, u, q);
        rep.max_ratio = std::max(rep.max_ratio, lhs);
        if (lhs > bound + kSlack) {
            ++rep.violations;
            if (rep.witness_values.empty()) rep.witness_values = {lhs, bound};
        }
    }
    rep.detail = "bound " + std::to_string(bound) + ", max ratio " + std::to_string(rep.max_ratio);
    rep.verdict = rep.violations == 0 ? Verdict::pass : Verdict::fail;
    if (rep.verdict == Verdict::fail && rep.witness_vertices.empty()) rep.witness_vertices = {0};
    return rep;
}

CheckReport embedding_audit_sobolev(const WeightedGraph& g, const SobolevSpec& spec, double q,
                                    int samples, std::uint64_t seed) {
    RayleighOptions opts;
    opts.seed = seed;
    EmbeddingConstant cst = empirical_embedding_constant(g, spec, q, opts);
    const double bound = cst.value * (1.0 + 1e-9);
    const bool qinf = !(q > 0.0) || std::isinf(q);

    Subspace sp = spec.domain ? constraint_subspace(g, *spec.domain, spec.m) : Subspace::full(g);
    CheckReport rep;
    rep.check = "embedding-audit-sobolev";
    rep.tolerance = kSlack;
    rep.samples = samples;
    Rng rng(seed ^ 0x5bf0d5ULL);
    for (int s = 0; s < samples; ++s) {
        std::vector<double> c(sp.dim());
        for (double& x : c) x = rng.uniform(-1.0, 1.0);
        GraphFunction u = sp.decode(c);
        double sn = norm_sobolev(g, u, spec);
        if (sn < 1e-14) continue;
        for (double& x : u) x /= sn;
        double lhs = qinf ? norm_linf(g, u)
                          : norm_lp(g, u, q,
                                    spec.domain ? std::span<const char>(spec.domain->in_omega)
                                                : std::span<const char>());
        rep.max_ratio = std::max(rep.max_ratio, lhs);
        if (lhs > bound + kSlack) {
            ++rep.violations;
            if (rep.witness_values.empty()) rep.witness_values = {lhs, bound};
        }
    }
    rep.detail = "empirical bound " + std::to_string(bound) + ", max ratio " +
                 std::to_string(rep.max_ratio);
    rep.verdict = rep.violations == 0 ? Verdict::pass : Verdict::fail;
    if (rep.verdict == Verdict::fail && rep.witness_vertices.empty()) rep.witness_vertices = {0};
    return rep;
}

CheckReport solution_audit(const EnergyModel& model, const SolveReport& report,
                           double residual_tol) {
    const WeightedGraph& g = *model.graph;
    CheckReport rep;
    rep.check = "solution-audit";
    rep.tolerance = residual_tol;

    ResidualReport res = el_residual(model, report.solution);
    if (res.max_abs > residual_tol) {
        rep.verdict = Verdict::fail;
        int worst = 0;
        double w = 0.0;
        for (int x = 0; x < g.n; ++x) {
            double m = std::max(std::abs(res.u[x]), std::abs(res.v[x]));
            if (m > w) {
                w = m;
                worst = x;
            }
        }
        rep.witness_vertices = {worst};
        rep.witness_values = {w};
        rep.detail = "EL residual " + std::to_string(res.max_abs) + " above tolerance";
        return rep;
    }

    const bool positivity_model =
        model.tag == ModelTag::J3Dirichlet || model.tag == ModelTag::J4PLap ||
        model.tag == ModelTag::J6Global || model.tag == ModelTag::J7PLapGlobal;
    if (positivity_model) {
        std::vector<int> verts;
        if (model.domain)
            verts = model.domain->interior;
        else {
            verts.resize(g.n);
            for (int x = 0; x < g.n; ++x) verts[x] = x;
        }
        for (int x : verts) {
            if (!(report.solution.u[x] > 0.0) || !(report.solution.v[x] > 0.0)) {
                // a zero is present: exercise the propagation argument
                GraphFunction h1 = model.h.empty() ? GraphFunction(g.n, 0.0) : model.h;
                GraphFunction h2 = h1;
                double p = model.tag == ModelTag::J3Dirichlet ? 2.0 : model.p;
                double q = model.tag == ModelTag::J3Dirichlet ? 2.0 : model.q;
                GraphFunction au = report.solution.u, av = report.solution.v;
                for (double& t : au) t = std::abs(t);
                for (double& t : av) t = std::abs(t);
                CheckReport smp = smp_check(g, au, av, h1, h2, p, q);
                rep.verdict = Verdict::fail;
                rep.witness_vertices = {x};
                rep.witness_values = {report.solution.u[x], report.solution.v[x]};
                rep.detail = "positivity fails at vertex " + std::to_string(x) +
                             "; smp propagation verdict: " + verdict_name(smp.verdict);
                return rep;
            }
        }
    }

    if (model.tag == ModelTag::J1Toda) {
        Subspace sp = Subspace::span(g, model.eig->basis);
        double ru = sp.membership_residual(report.solution.u);
        double rv = sp.membership_residual(report.solution.v);
        GraphFunction absu(g.n), absv(g.n);
        double nu = 0.0, nv = 0.0;
        for (int x = 0; x < g.n; ++x) {
            nu += g.measure[x] * report.solution.u[x] * report.solution.u[x];
            nv += g.measure[x] * report.solution.v[x] * report.solution.v[x];
        }
        double mean_u = std::abs(integral(g, report.solution.u));
        double mean_v = std::abs(integral(g, report.solution.v));
        double scale = std::sqrt(nu) + std::sqrt(nv);
        if (ru > 1e-9 || rv > 1e-9 || mean_u + mean_v > 1e-9 * std::max(scale, 1e-30)) {
            rep.verdict = Verdict::fail;
            rep.witness_values = {ru, rv, mean_u, mean_v};
            rep.detail = "eigenspace membership or mean-zero identity failed";
            return rep;
        }
        rep.detail = "eigenspace residual " + std::to_string(std::max(ru, rv)) +
                     ", |mean| " + std::to_string(std::max(mean_u, mean_v));
    }

    rep.verdict = Verdict::pass;
    if (rep.detail.empty()) rep.detail = "EL residual " + std::to_string(res.max_abs);
    return rep;
}

} // namespace grapde
