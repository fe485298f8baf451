#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "grapde/verify.hpp"

using namespace grapde;

TEST_CASE("el_residual: closed form, trivial pair, gradient identity") {
    WeightedGraph p3 = gen_path(3);
    DomainSpec dom = make_domain(p3, {0, 1});
    EnergyModel j3 = make_j3(p3, dom, 3.0, 3.0);

    const double s = std::pow(2.0, 0.25);
    ResidualReport closed = el_residual(j3, {{s, 0, 0}, {s, 0, 0}});
    CHECK(closed.max_abs <= 1e-12);

    FunctionPair zero{GraphFunction(3, 0.0), GraphFunction(3, 0.0)};
    CHECK(el_residual(j3, zero).max_abs == 0.0);
    WeightedGraph k3 = gen_complete(3);
    EnergyModel j6 = make_j6(k3, GraphFunction(3, 1.0), {1.0, 3.0}, {1.0, 3.0}, 2.5, 3.0);
    CHECK(el_residual(j6, {GraphFunction(3, 0.0), GraphFunction(3, 0.0)}).max_abs == 0.0);

    // on the interior the residual IS the energy gradient (order-1 Dirichlet)
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        GraphFunction u(3, 0.0), v(3, 0.0);
        u[0] = rng.uniform(-1.0, 1.0);
        v[0] = rng.uniform(-1.0, 1.0);
        FunctionPair pr{u, v};
        ResidualReport r = el_residual(j3, pr);
        FunctionPair g = energy_gradient(j3, pr);
        CHECK(r.u[0] == doctest::Approx(g.u[0]).epsilon(1e-12));
        CHECK(r.v[0] == doctest::Approx(g.v[0]).epsilon(1e-12));
        CHECK(r.u[1] == 0.0); // boundary rows are projected out
        CHECK(r.u[2] == 0.0);
    }
}

TEST_CASE("smp_check: spec examples") {
    WeightedGraph p3 = gen_path(3);
    GraphFunction zero(3, 0.0), h0(3, 0.0);

    CheckReport trivial = smp_check(p3, zero, zero, h0, h0, 2.0, 2.0);
    CHECK(trivial.verdict == Verdict::pass);

    // u = (0, 0.5, 1), v = 1: -Delta u(0) = -0.5 < 0 violates the hypothesis at vertex 0
    CheckReport viol = smp_check(p3, {0, 0.5, 1}, GraphFunction(3, 1.0), h0, h0, 2.0, 2.0);
    CHECK(viol.verdict == Verdict::hypothesis_violated);
    REQUIRE_FALSE(viol.witness_vertices.empty());
    CHECK(viol.witness_vertices[0] == 0);

    CHECK_THROWS_AS(smp_check(p3, zero, zero, h0, h0, 1.5, 2.0), std::invalid_argument);

    // p = 4: degenerate |grad u|^{p-2} coefficients still expose the violation
    CheckReport v4 = smp_check(p3, {0, 0, 1}, zero, h0, h0, 4.0, 4.0);
    CHECK(v4.verdict == Verdict::hypothesis_violated);
    CHECK(smp_check(p3, zero, zero, h0, h0, 4.0, 4.0).verdict == Verdict::pass);
}

TEST_CASE("smp_check matches brute-force zero-set enumeration") {
    // all u in {0,1}^n: the checker passes exactly when the hypotheses hold
    // and every zero propagates, which on consistent inputs means u == 0
    Rng rng(7);
    std::vector<WeightedGraph> graphs;
    graphs.push_back(gen_path(6));
    graphs.push_back(gen_cycle(6));
    graphs.push_back(gen_star(6));
    graphs.push_back(gen_grid(2, 4));
    graphs.push_back(testutil::random_graph(rng, 8, 1.0, 1.0));

    for (const auto& g : graphs) {
        GraphFunction h0(g.n, 0.0), zero(g.n, 0.0);
        for (int bits = 0; bits < (1 << g.n); ++bits) {
            GraphFunction u(g.n);
            for (int x = 0; x < g.n; ++x) u[x] = (bits >> x) & 1;
            CheckReport rep = smp_check(g, u, zero, h0, h0, 2.0, 2.0);

            // brute-force prediction
            bool hyp_ok = true;
            GraphFunction lap = laplacian(g, u);
            for (int x = 0; x < g.n && hyp_ok; ++x)
                if (-lap[x] < -1e-12) hyp_ok = false;
            if (!hyp_ok) {
                CHECK(rep.verdict == Verdict::hypothesis_violated);
            } else {
                // strictly positive u has no zero to propagate (vacuous);
                // otherwise propagation must reach all of V, i.e. u == 0
                bool expected = bits == 0 || bits == (1 << g.n) - 1;
                CHECK((rep.verdict == Verdict::pass) == expected);
            }
        }
    }
}

TEST_CASE("embedding audits") {
    WeightedGraph p2 = gen_path(2);
    EigenData eig = first_eigenvalue(p2);
    CheckReport a = embedding_audit_eigenspace(p2, eig, 1, 2.0, 0, 200, 5);
    CHECK(a.verdict == Verdict::pass);
    CHECK(a.violations == 0);
    CHECK(a.max_ratio <= 2.0 * std::sqrt(2.0) + 1e-12);

    // q = infinity audits against C_*
    CheckReport ainf = embedding_audit_eigenspace(
        p2, eig, 1, std::numeric_limits<double>::infinity(), 0, 200, 5);
    CHECK(ainf.verdict == Verdict::pass);

    // constant function in the W-audit: finite ratio, no violation
    WeightedGraph k3 = gen_complete(3);
    SobolevSpec spec;
    spec.m = 1;
    spec.p = 2.0;
    spec.h = GraphFunction(3, 1.0);
    CheckReport w = embedding_audit_sobolev(k3, spec, 2.0, 300, 9);
    CHECK(w.verdict == Verdict::pass);
    CHECK(w.max_ratio > 0.0);
}

TEST_CASE("solution audits") {
    // J1 on P2: eigenspace membership and mean-zero identities
    WeightedGraph p2 = gen_path(2);
    EnergyModel j1 = make_j1(p2, 1.0, 1.0, 1, 1, first_eigenvalue(p2));
    SolveConfig cfg;
    cfg.grad_tol = 1e-10;
    SolveReport rep = minimize_direct(j1, cfg);
    CheckReport audit = solution_audit(j1, rep, 1e-8);
    CHECK(audit.verdict == Verdict::pass);

    // J3 positivity pass on the interior
    WeightedGraph p3 = gen_path(3);
    DomainSpec dom = make_domain(p3, {0, 1});
    EnergyModel j3 = make_j3(p3, dom, 3.0, 3.0);
    SolveReport mp = mountain_pass(j3, cfg);
    CheckReport a3 = solution_audit(j3, mp, 1e-7);
    CHECK(a3.verdict == Verdict::pass);

    // hand-built violation: interior vertex forced to zero
    SolveReport broken = mp;
    broken.solution.u[0] = 0.0;
    CheckReport bad = solution_audit(j3, broken, 1e10); // residual tolerance out of the way
    CHECK(bad.verdict == Verdict::fail);
    REQUIRE_FALSE(bad.witness_vertices.empty());
    CHECK(bad.witness_vertices[0] == 0);
    CHECK(bad.detail.find("positivity") != std::string::npos);
}

TEST_CASE("J1 audited identities across graphs") {
    for (auto make : {gen_path, gen_complete, gen_star}) {
        WeightedGraph g = make(4, 1.0);
        EnergyModel j1 = make_j1(g, 1.0, 1.0, 1, 1, first_eigenvalue(g));
        SolveConfig cfg;
        cfg.grad_tol = 1e-10;
        cfg.nonmonotone = true;
        SolveReport rep = minimize_direct(j1, cfg);
        double nu = std::sqrt(testutil::dot_psi(g, rep.solution.u, rep.solution.u));
        double nv = std::sqrt(testutil::dot_psi(g, rep.solution.v, rep.solution.v));
        CHECK(std::abs(integral(g, rep.solution.u)) + std::abs(integral(g, rep.solution.v)) <=
              1e-9 * std::max(nu + nv, 1e-12));
    }
}
