#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace grapde {

// Function on the vertex set, indexed like the owning graph.
using GraphFunction = std::vector<double>;

struct Edge {
    int i = 0, j = 0;
    double w = 1.0;
};

// Finite weighted graph with the vertex measure psi(x) = sum of incident
// edge weights. Immutable after construction; adjacency is CSR.
struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;       // canonical: i < j, sorted lexicographically
    std::vector<double> measure;   // psi(x), strictly positive
    bool connected = false;

    std::vector<int> adj_ptr;      // size n+1
    std::vector<int> adj_vtx;
    std::vector<double> adj_w;

    double volume() const;         // sum of psi = 2 * sum of weights
    double min_weight() const;     // omega_0
    double min_measure() const;    // psi_0

    int degree(int x) const { return adj_ptr[x + 1] - adj_ptr[x]; }
};

// Builds the graph from an edge list, computing measure, CSR adjacency and
// the connectivity flag. Throws std::invalid_argument naming the offending
// entry on: index out of range, non-positive weight, self-loop, duplicate
// edge, isolated vertex. A disconnected graph builds fine (connected=false).
WeightedGraph build_graph(int vertex_count, std::vector<Edge> edges);
// vertex_count inferred as max index + 1
WeightedGraph build_graph(std::vector<Edge> edges);

// Throws when u is not a valid function on g (length or non-finite values).
void check_function(const WeightedGraph& g, std::span<const double> u, const char* what = "function");

// sum_x psi(x) u(x); summation order is fixed (index order) so results are
// reproducible bit-for-bit.
double integral(const WeightedGraph& g, std::span<const double> u);
// same, restricted to the vertices flagged in mask (mask size n)
double integral_masked(const WeightedGraph& g, std::span<const double> u, std::span<const char> mask);

// BFS edge-count distance rho(x, origin). Throws when x is unreachable,
// naming the two components.
int distance(const WeightedGraph& g, int x, int origin);
// full distance field from origin; unreachable vertices get -1
std::vector<int> distance_field(const WeightedGraph& g, int origin);

// Subset with derived boundary and interior:
//   boundary = { x in omega : exists y not in omega with (x,y) in E }
//   interior = omega \ boundary
struct DomainSpec {
    std::vector<int> omega;        // sorted, unique
    std::vector<int> boundary;
    std::vector<int> interior;
    std::vector<char> in_omega;    // size n masks
    std::vector<char> on_boundary;
    std::vector<char> in_interior;
};

DomainSpec make_domain(const WeightedGraph& g, std::vector<int> omega);

// Nested BFS balls V_k = {rho < k} and shells {rho = k}, k = 1..K.
struct BallFamily {
    int center = 0;
    int K = 0;
    std::vector<int> rho;                       // distance field
    std::vector<std::vector<int>> balls;        // balls[k-1] = V_k
    std::vector<std::vector<int>> shells;       // shells[k-1] = boundary of V_k
    // Domain for the Dirichlet solve on V_k: omega = {rho <= k}, whose
    // derived interior is V_k and derived boundary is the shell.
    DomainSpec domain(const WeightedGraph& g, int k) const;
};

BallFamily ball_family(const WeightedGraph& g, int center, int K);

// Generator families: path n, cycle n, complete n, star n (n vertices,
// center 0), grid a x b, random-connected n p (resampled until connected).
// Unit weights unless weight is given.
WeightedGraph gen_path(int n, double weight = 1.0);
WeightedGraph gen_cycle(int n, double weight = 1.0);
WeightedGraph gen_complete(int n, double weight = 1.0);
WeightedGraph gen_star(int n, double weight = 1.0);
WeightedGraph gen_grid(int a, int b, double weight = 1.0);
WeightedGraph gen_random_connected(int n, double p, std::uint64_t seed, double weight = 1.0);

// name in {path, cycle, complete, star, grid, random-connected}; params as
// the CLI passes them (n / a b / n p).
WeightedGraph generate(const std::string& family, const std::vector<double>& params,
                       std::uint64_t seed, double weight = 1.0);

// Uniformly rescale the edge weights so the total measure is 1. The
// normalized Laplacian and its spectrum are unchanged; only integrals
// rescale (the pointwise reading of the Toda system needs Vol(V) = 1).
WeightedGraph rescale_unit_volume(const WeightedGraph& g);

// JSON: {"vertices": n, "edges": [[i, j, w], ...]}, 0-based indices.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);

// Plain-text edge list, one "i j w" per line ('#' comments, w optional -> 1).
std::string graph_to_edgelist(const WeightedGraph& g);
WeightedGraph graph_from_edgelist(const std::string& text);

} // namespace grapde
