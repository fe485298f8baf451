#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "grapde/kernels.hpp"

using namespace grapde;

TEST_CASE("OpenMP kernels match the serial reference bit-for-bit") {
    Rng rng(123);
    for (int rep = 0; rep < 12; ++rep) {
        WeightedGraph g = testutil::random_graph(rng, 20 + static_cast<int>(rng.below(200)));
        GraphFunction u = testutil::random_function(rng, g.n);
        GraphFunction v = testutil::random_function(rng, g.n);
        GraphFunction c = testutil::random_function(rng, g.n, 0.0, 2.0);
        GraphFunction a(g.n), b(g.n);

        kernels::laplacian(g, u, a);
        kernels::serial::laplacian(g, u, b);
        CHECK(a == b);

        kernels::gamma(g, u, v, a);
        kernels::serial::gamma(g, u, v, b);
        CHECK(a == b);

        kernels::grad_norm(g, u, a);
        kernels::serial::grad_norm(g, u, b);
        CHECK(a == b);

        kernels::edge_weighted(g, c, u, a);
        kernels::serial::edge_weighted(g, c, u, b);
        CHECK(a == b);
    }
}

TEST_CASE("kernels are deterministic across repeated calls") {
    Rng rng(9);
    WeightedGraph g = testutil::random_graph(rng, 333);
    GraphFunction u = testutil::random_function(rng, g.n);
    GraphFunction first(g.n), again(g.n);
    kernels::laplacian(g, u, first);
    for (int rep = 0; rep < 5; ++rep) {
        kernels::laplacian(g, u, again);
        CHECK(first == again);
    }
    CHECK(integral(g, u) == integral(g, u));
}
