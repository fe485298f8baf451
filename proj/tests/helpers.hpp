#pragma once

#include "grapde/energy.hpp"
#include "grapde/graph.hpp"
#include "grapde/rng.hpp"
#include "grapde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace testutil {

// random connected graph: spanning tree plus extra edges, weights in [wmin,wmax]
inline grapde::WeightedGraph random_graph(grapde::Rng& rng, int n, double wmin = 0.1,
                                          double wmax = 2.0, double extra_p = 0.25) {
    std::vector<grapde::Edge> edges;
    std::set<std::pair<int, int>> seen;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.below(v));
        edges.push_back({u, v, rng.uniform(wmin, wmax)});
        seen.insert({u, v});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (seen.count({i, j})) continue;
            if (rng.uniform() < extra_p) {
                edges.push_back({i, j, rng.uniform(wmin, wmax)});
                seen.insert({i, j});
            }
        }
    return grapde::build_graph(n, std::move(edges));
}

inline grapde::GraphFunction random_function(grapde::Rng& rng, int n, double lo = -1.0,
                                             double hi = 1.0) {
    grapde::GraphFunction u(n);
    for (double& v : u) v = rng.uniform(lo, hi);
    return u;
}

// max-abs relative disagreement between analytic coordinate gradient and
// central finite differences of the energy
inline double fd_gradient_error(const grapde::EnergyModel& model, const grapde::PairSpace& space,
                                std::vector<double> c, double h = 1e-6) {
    std::vector<double> an = space.gradient_coords(model, space.decode(c));
    double worst = 0.0, scale = 1.0;
    for (double v : an) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<double> cp = c, cm = c;
        cp[i] += h;
        cm[i] -= h;
        double fd = (grapde::energy_value(model, space.decode(cp)) -
                     grapde::energy_value(model, space.decode(cm))) /
                    (2.0 * h);
        worst = std::max(worst, std::abs(fd - an[i]) / scale);
    }
    return worst;
}

inline double dot_psi(const grapde::WeightedGraph& g, const grapde::GraphFunction& a,
                      const grapde::GraphFunction& b) {
    double s = 0.0;
    for (int x = 0; x < g.n; ++x) s += g.measure[x] * a[x] * b[x];
    return s;
}

} // namespace testutil
