#pragma once

#include "grapde/graph.hpp"

#include <span>

namespace grapde::kernels {

// Per-vertex operator kernels. Each output entry is produced by one thread
// from a serial scan of that vertex's CSR row, so results are bit-identical
// for any thread count. The serial namespace keeps plain-loop reference
// implementations for testing and benchmarking against the OpenMP versions.

// out[x] = (1/psi(x)) sum_y w_xy (u[y] - u[x])
void laplacian(const WeightedGraph& g, std::span<const double> u, std::span<double> out);

// out[x] = (1/(2 psi(x))) sum_y w_xy (u[y]-u[x]) (v[y]-v[x])
void gamma(const WeightedGraph& g, std::span<const double> u, std::span<const double> v,
           std::span<double> out);

// out[x] = sqrt(gamma(u,u)(x))
void grad_norm(const WeightedGraph& g, std::span<const double> u, std::span<double> out);

// out[x] = (1/(2 psi(x))) sum_y w_xy (c[y]+c[x]) (a[y]-a[x])
// The workhorse behind the p-Laplacian (c = |grad u|^{p-2}) and the
// Dirichlet-restricted energy gradients (c = chi_Omega * |grad^m u|^{p-2}).
void edge_weighted(const WeightedGraph& g, std::span<const double> c, std::span<const double> a,
                   std::span<double> out);

namespace serial {
void laplacian(const WeightedGraph& g, std::span<const double> u, std::span<double> out);
void gamma(const WeightedGraph& g, std::span<const double> u, std::span<const double> v,
           std::span<double> out);
void grad_norm(const WeightedGraph& g, std::span<const double> u, std::span<double> out);
void edge_weighted(const WeightedGraph& g, std::span<const double> c, std::span<const double> a,
                   std::span<double> out);
} // namespace serial

} // namespace grapde::kernels
