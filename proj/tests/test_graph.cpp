#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "grapde/graph.hpp"
#include "grapde/kernels.hpp"
#include "grapde/rng.hpp"

#include <queue>

using namespace grapde;

TEST_CASE("build_graph: measure, connectivity, smallest graphs") {
    WeightedGraph p2 = build_graph(2, {{0, 1, 1.0}});
    CHECK(p2.n == 2);
    CHECK(p2.measure[0] == 1.0);
    CHECK(p2.measure[1] == 1.0);
    CHECK(p2.connected);

    WeightedGraph k3 = build_graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    CHECK(k3.measure == GraphFunction{2.0, 2.0, 2.0});
    CHECK(k3.connected);

    WeightedGraph two = build_graph({{0, 1, 1}, {2, 3, 1}});
    CHECK_FALSE(two.connected);
    CHECK(two.n == 4);
}

TEST_CASE("build_graph: rejections name the offender") {
    CHECK_THROWS_WITH_AS(build_graph(2, {{0, 1, 1}, {1, 0, 2}}),
                         doctest::Contains("duplicate edge (0,1)"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_graph(2, {{0, 1, -1}}), doctest::Contains("non-positive weight"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_graph(2, {{1, 1, 1}}), doctest::Contains("self-loop at vertex 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_graph(3, {{0, 1, 1}}), doctest::Contains("isolated vertex 2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{0, 5, 1}}), std::invalid_argument);
}

TEST_CASE("integral") {
    WeightedGraph p2 = gen_path(2);
    CHECK(integral(p2, GraphFunction{1, 2}) == doctest::Approx(3.0));
    CHECK(integral(p2, GraphFunction{1, -1}) == doctest::Approx(0.0));
    WeightedGraph k3 = gen_complete(3);
    CHECK(integral(k3, GraphFunction(3, 1.0)) == doctest::Approx(6.0));
    CHECK_THROWS_AS(integral(p2, GraphFunction{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("distance") {
    WeightedGraph p3 = gen_path(3);
    CHECK(distance(p3, 2, 0) == 2);
    CHECK(distance(p3, 0, 0) == 0);
    WeightedGraph k3 = gen_complete(3);
    CHECK(distance(k3, 1, 0) == 1);
    WeightedGraph two = build_graph({{0, 1, 1}, {2, 3, 1}});
    CHECK_THROWS_WITH_AS(distance(two, 2, 0), doctest::Contains("unreachable"),
                         std::runtime_error);
}

TEST_CASE("ball_family: BFS shells") {
    WeightedGraph p3 = gen_path(3);
    BallFamily f = ball_family(p3, 0, 2);
    CHECK(f.balls[0] == std::vector<int>{0});
    CHECK(f.balls[1] == std::vector<int>{0, 1});
    CHECK(f.shells[1] == std::vector<int>{2});

    WeightedGraph k3 = gen_complete(3);
    BallFamily fk = ball_family(k3, 0, 2);
    CHECK(fk.balls[1] == std::vector<int>{0, 1, 2});
    CHECK(fk.shells[1].empty());

    // 5x5 grid, center, K=2 against an independent BFS
    WeightedGraph grid = gen_grid(5, 5);
    int center = 12;
    BallFamily fg = ball_family(grid, center, 2);
    std::vector<int> dist(grid.n, -1);
    std::queue<int> bfs;
    dist[center] = 0;
    bfs.push(center);
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (int e = grid.adj_ptr[x]; e < grid.adj_ptr[x + 1]; ++e)
            if (dist[grid.adj_vtx[e]] < 0) {
                dist[grid.adj_vtx[e]] = dist[x] + 1;
                bfs.push(grid.adj_vtx[e]);
            }
    }
    std::vector<int> expect;
    for (int x = 0; x < grid.n; ++x)
        if (dist[x] < 2) expect.push_back(x);
    CHECK(fg.balls[1] == expect);
    CHECK(fg.balls[1].size() == 5); // center plus its 4 neighbors

    // domain of the ball: interior = V_k, boundary = shell
    DomainSpec dom = fg.domain(grid, 2);
    CHECK(dom.interior == fg.balls[1]);
    CHECK(dom.boundary == fg.shells[1]);
}

TEST_CASE("generate: families and determinism") {
    WeightedGraph p2 = generate("path", {2}, 0);
    CHECK(p2.n == 2);
    CHECK(p2.measure == GraphFunction{1.0, 1.0});
    WeightedGraph k3 = generate("complete", {3}, 0);
    CHECK(k3.edges.size() == 3);
    WeightedGraph s5 = generate("star", {5}, 0);
    CHECK(s5.degree(0) == 4);
    WeightedGraph gr = generate("grid", {3, 4}, 0);
    CHECK(gr.n == 12);

    WeightedGraph r1 = generate("random-connected", {10, 0.3}, 7);
    WeightedGraph r2 = generate("random-connected", {10, 0.3}, 7);
    REQUIRE(r1.edges.size() == r2.edges.size());
    for (std::size_t i = 0; i < r1.edges.size(); ++i) {
        CHECK(r1.edges[i].i == r2.edges[i].i);
        CHECK(r1.edges[i].j == r2.edges[i].j);
        CHECK(r1.edges[i].w == r2.edges[i].w);
    }
    CHECK(r1.connected);
    CHECK_THROWS_AS(generate("moebius", {5}, 0), std::invalid_argument);
}

TEST_CASE("handshake identity on random graphs") {
    Rng rng(42);
    for (int rep = 0; rep < 30; ++rep) {
        WeightedGraph g = testutil::random_graph(rng, 3 + static_cast<int>(rng.below(10)));
        double edge_sum = 0.0;
        for (const Edge& e : g.edges) edge_sum += e.w;
        CHECK(g.volume() == doctest::Approx(2.0 * edge_sum).epsilon(1e-12));
    }
}

TEST_CASE("domain: boundary and interior partition omega") {
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        WeightedGraph g = testutil::random_graph(rng, 4 + static_cast<int>(rng.below(8)));
        std::vector<int> omega;
        for (int x = 0; x < g.n; ++x)
            if (rng.uniform() < 0.6) omega.push_back(x);
        if (omega.empty()) omega.push_back(0);
        DomainSpec d = make_domain(g, omega);
        std::set<int> bnd(d.boundary.begin(), d.boundary.end());
        std::set<int> itr(d.interior.begin(), d.interior.end());
        for (int x : d.boundary) CHECK(itr.count(x) == 0);
        std::set<int> uni = bnd;
        uni.insert(itr.begin(), itr.end());
        CHECK(uni == std::set<int>(d.omega.begin(), d.omega.end()));
        // definition check vertex by vertex
        for (int x : d.omega) {
            bool has_outside = false;
            for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e)
                has_outside = has_outside || !d.in_omega[g.adj_vtx[e]];
            CHECK(static_cast<bool>(d.on_boundary[x]) == has_outside);
        }
    }
}

TEST_CASE("BFS distance: triangle inequality on sampled triples") {
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        WeightedGraph g = testutil::random_graph(rng, 12);
        for (int t = 0; t < 20; ++t) {
            int a = static_cast<int>(rng.below(g.n));
            int b = static_cast<int>(rng.below(g.n));
            int c = static_cast<int>(rng.below(g.n));
            CHECK(distance(g, a, c) <= distance(g, a, b) + distance(g, b, c));
        }
    }
}

TEST_CASE("unit-volume rescale keeps the spectrum, normalizes the measure") {
    Rng rng(77);
    WeightedGraph g = testutil::random_graph(rng, 9);
    WeightedGraph gu = rescale_unit_volume(g);
    CHECK(gu.volume() == doctest::Approx(1.0).epsilon(1e-14));
    GraphFunction u = testutil::random_function(rng, g.n);
    // the psi-normalized Laplacian is invariant under uniform weight scaling
    GraphFunction a(g.n), b(g.n);
    kernels::laplacian(g, u, a);
    kernels::laplacian(gu, u, b);
    for (int x = 0; x < g.n; ++x) CHECK(a[x] == doctest::Approx(b[x]).epsilon(1e-13));
}

TEST_CASE("serialization round-trips bit-identically") {
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        WeightedGraph g = testutil::random_graph(rng, 4 + static_cast<int>(rng.below(8)));
        WeightedGraph gj = graph_from_json(graph_to_json(g));
        REQUIRE(gj.n == g.n);
        REQUIRE(gj.edges.size() == g.edges.size());
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            CHECK(gj.edges[i].i == g.edges[i].i);
            CHECK(gj.edges[i].j == g.edges[i].j);
            CHECK(gj.edges[i].w == g.edges[i].w); // bitwise
        }
        CHECK(gj.measure == g.measure);

        WeightedGraph ge = graph_from_edgelist(graph_to_edgelist(g));
        REQUIRE(ge.n == g.n);
        for (std::size_t i = 0; i < g.edges.size(); ++i) CHECK(ge.edges[i].w == g.edges[i].w);
    }
}
