#include "grapde/kernels.hpp"

#include <cmath>

namespace grapde::kernels {

void laplacian(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e)
            s += g.adj_w[e] * (u[g.adj_vtx[e]] - u[x]);
        out[x] = s / g.measure[x];
    }
}

void gamma(const WeightedGraph& g, std::span<const double> u, std::span<const double> v,
           std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            s += g.adj_w[e] * (u[y] - u[x]) * (v[y] - v[x]);
        }
        out[x] = s / (2.0 * g.measure[x]);
    }
}

void grad_norm(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            double d = u[y] - u[x];
            s += g.adj_w[e] * d * d;
        }
        out[x] = std::sqrt(s / (2.0 * g.measure[x]));
    }
}

void edge_weighted(const WeightedGraph& g, std::span<const double> c, std::span<const double> a,
                   std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            s += g.adj_w[e] * (c[y] + c[x]) * (a[y] - a[x]);
        }
        out[x] = s / (2.0 * g.measure[x]);
    }
}

namespace serial {

void laplacian(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e)
            s += g.adj_w[e] * (u[g.adj_vtx[e]] - u[x]);
        out[x] = s / g.measure[x];
    }
}

void gamma(const WeightedGraph& g, std::span<const double> u, std::span<const double> v,
           std::span<double> out) {
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            s += g.adj_w[e] * (u[y] - u[x]) * (v[y] - v[x]);
        }
        out[x] = s / (2.0 * g.measure[x]);
    }
}

void grad_norm(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            double d = u[y] - u[x];
            s += g.adj_w[e] * d * d;
        }
        out[x] = std::sqrt(s / (2.0 * g.measure[x]));
    }
}

void edge_weighted(const WeightedGraph& g, std::span<const double> c, std::span<const double> a,
                   std::span<double> out) {
    for (int x = 0; x < g.n; ++x) {
        double s = 0.0;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            s += g.adj_w[e] * (c[y] + c[x]) * (a[y] - a[x]);
        }
        out[x] = s / (2.0 * g.measure[x]);
    }
}

} // namespace serial

} // namespace grapde::kernels
