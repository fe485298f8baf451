#pragma once

#include "grapde/energy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grapde {

struct SolveConfig {
    double grad_tol = 1e-8;
    int max_iter = 100000;
    double armijo_c1 = 1e-4;
    double armijo_backtrack = 0.5;
    double armijo_init_step = 1.0;
    int path_nodes = 41;       // mountain-pass path resolution
    double ray_growth = 2.0;   // doubling factor for the J < 0 ray search
    std::uint64_t seed = 0;
    int multi_start = 8;
    bool nonmonotone = false;  // safeguard for flat eigenspace landscapes
    bool keep_trace = true;
};

enum class SolveStatus { converged, max_iter, degenerate };

const char* status_name(SolveStatus s);

struct SolveReport {
    FunctionPair solution;
    std::vector<double> energy_trace;     // winning run
    std::vector<double> grad_norm_trace;  // the (PS) monitor
    GraphFunction el_residual_u, el_residual_v; // projected EL residual, per vertex
    double el_residual_max = 0.0;
    bool u_positive = false, v_positive = false; // strict, on the active vertex set
    double critical_value = 0.0;
    SolveStatus status = SolveStatus::max_iter;
    double final_grad_norm = 0.0;
    double solution_norm = 0.0;                // coordinate (psi-L2) norm
    double mountain_radius_estimate = 0.0;     // mountain_pass only
    double literal_system_residual_max = 0.0; // Toda system in literal form
    double energy_at_zero = 0.0;
    int iterations = 0;
    std::string note;
};

// Stacked coordinates over the admissible spaces of u and v.
struct PairSpace {
    Subspace su, sv;

    static PairSpace of(const EnergyModel& model);
    int dim() const { return su.dim() + sv.dim(); }
    FunctionPair decode(std::span<const double> coords) const;
    std::vector<double> encode_pair(const FunctionPair& pair) const;
    std::vector<double> gradient_coords(const EnergyModel& model, const FunctionPair& pair) const;
};

// Projected gradient descent with Armijo backtracking over the admissible
// coordinates, multi-start, deterministic reduction. For J1 the report
// certifies J(solution) <= J(0,0).
SolveReport minimize_direct(const EnergyModel& model, const SolveConfig& config = {});

// Mountain-pass method: ray doubling to find J < 0, path of path_nodes
// states, repeated descent of the maximal-energy node with local
// re-relaxation, then Newton refinement; rejects returns below the estimated
// mountain radius. Throws "no mountain geometry" when the ray search fails.
SolveReport mountain_pass(const EnergyModel& model, const SolveConfig& config = {});

// Damped Newton on the projected-gradient map, numeric Jacobian, gradient
// fallback on singularity; divergence returns the start flagged degenerate.
SolveReport newton_refine(const EnergyModel& model, const FunctionPair& start,
                          const SolveConfig& config = {});

// Growing truncation of a locally finite family. Edge weights are
// ratio^depth; outward-growing weights (ratio > 1) keep the per-ball
// Dirichlet problems uniformly coercive so the window values stabilize.
// Host radius is K+1 so every ball k <= K has a nonempty shell.
struct ExhaustFamily {
    std::string name;  // "path" | "grid"
    WeightedGraph host;
    int center = 0;
    BallFamily balls;  // K entries
    double declared_omega0 = 1.0;
};

ExhaustFamily make_exhaust_family(const std::string& name, int K, double ratio = 32.0);

struct ExhaustionReport {
    std::vector<int> ball_sizes;          // |V_k|
    std::vector<double> energies;         // per-ball minimum
    std::vector<double> el_residuals;     // per-ball projected EL residual max
    std::vector<double> window_diffs;     // sup over the window, successive solutions
    std::vector<std::string> statuses;
    FunctionPair final_solution;          // zero-extended on the host
    double final_window_diff = 0.0;
};

// Dirichlet Toda solves on the nested balls, recording sup-differences of
// successive solutions on the window (the diagonal-argument shadow).
ExhaustionReport exhaustion_solve(const ExhaustFamily& family, double phi1, double phi2, int m,
                                  int n, const std::vector<int>& window,
                                  const SolveConfig& config = {});

} // namespace grapde
