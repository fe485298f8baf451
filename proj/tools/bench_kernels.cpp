// Benchmark: OpenMP kernels against the serial reference on a large random
// graph plus a grid. Run manually; not part of the test suite.

#include "grapde/graph.hpp"
#include "grapde/kernels.hpp"
#include "grapde/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F> double time_ms(F&& fn, int reps) {
    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_graph(const char* name, const grapde::WeightedGraph& g, int reps) {
    grapde::Rng rng(7);
    grapde::GraphFunction u(g.n), v(g.n), out(g.n), out_ref(g.n), c(g.n);
    for (int x = 0; x < g.n; ++x) {
        u[x] = rng.uniform(-1.0, 1.0);
        v[x] = rng.uniform(-1.0, 1.0);
        c[x] = rng.uniform(0.1, 2.0);
    }

    struct Row {
        const char* op;
        double serial_ms, omp_ms;
        bool identical;
    };
    Row rows[4];

    rows[0].op = "laplacian";
    rows[0].serial_ms = time_ms([&] { grapde::kernels::serial::laplacian(g, u, out_ref); }, reps);
    rows[0].omp_ms = time_ms([&] { grapde::kernels::laplacian(g, u, out); }, reps);
    rows[0].identical = out == out_ref;

    rows[1].op = "gamma";
    rows[1].serial_ms = time_ms([&] { grapde::kernels::serial::gamma(g, u, v, out_ref); }, reps);
    rows[1].omp_ms = time_ms([&] { grapde::kernels::gamma(g, u, v, out); }, reps);
    rows[1].identical = out == out_ref;

    rows[2].op = "grad_norm";
    rows[2].serial_ms = time_ms([&] { grapde::kernels::serial::grad_norm(g, u, out_ref); }, reps);
    rows[2].omp_ms = time_ms([&] { grapde::kernels::grad_norm(g, u, out); }, reps);
    rows[2].identical = out == out_ref;

    rows[3].op = "edge_weighted";
    rows[3].serial_ms =
        time_ms([&] { grapde::kernels::serial::edge_weighted(g, c, u, out_ref); }, reps);
    rows[3].omp_ms = time_ms([&] { grapde::kernels::edge_weighted(g, c, u, out); }, reps);
    rows[3].identical = out == out_ref;

    std::printf("%s (n=%d, edges=%zu)\n", name, g.n, g.edges.size());
    std::printf("  %-14s %10s %10s %8s %10s\n", "kernel", "serial ms", "omp ms", "speedup",
                "bit-equal");
    for (const Row& r : rows)
        std::printf("  %-14s %10.3f %10.3f %7.2fx %10s\n", r.op, r.serial_ms, r.omp_ms,
                    r.serial_ms / r.omp_ms, r.identical ? "yes" : "NO");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time\n");
#endif
    grapde::WeightedGraph grid = grapde::gen_grid(64, 64);
    grapde::WeightedGraph dense = grapde::gen_random_connected(1500, 0.05, 11);
    bench_graph("grid 64x64", grid, 200);
    bench_graph("random-connected 1500 p=0.05", dense, 50);
    return 0;
}
