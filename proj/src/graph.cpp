#include "grapde/graph.hpp"

#include "grapde/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace grapde {

namespace {

std::vector<int> component_of(const WeightedGraph& g, int start) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> out;
    std::queue<int> bfs;
    bfs.push(start);
    seen[start] = 1;
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        out.push_back(x);
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            if (!seen[y]) { seen[y] = 1; bfs.push(y); }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

double WeightedGraph::volume() const {
    double s = 0.0;
    for (double m : measure) s += m;
    return s;
}

double WeightedGraph::min_weight() const {
    double w = edges.empty() ? 0.0 : edges[0].w;
    for (const Edge& e : edges) w = std::min(w, e.w);
    return w;
}

double WeightedGraph::min_measure() const {
    double m = measure.empty() ? 0.0 : measure[0];
    for (double v : measure) m = std::min(m, v);
    return m;
}

WeightedGraph build_graph(int vertex_count, std::vector<Edge> edges) {
    if (vertex_count <= 0) throw std::invalid_argument("build_graph: vertex_count must be positive");
    for (Edge& e : edges) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i < 0 || e.j >= vertex_count)
            throw std::invalid_argument("build_graph: edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") out of range");
        if (e.i == e.j)
            throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(e.i));
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw std::invalid_argument("build_graph: non-positive weight on edge (" +
                                        std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j)
            throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(edges[k].i) +
                                        "," + std::to_string(edges[k].j) + ")");

    WeightedGraph g;
    g.n = vertex_count;
    g.edges = std::move(edges);
    g.measure.assign(g.n, 0.0);
    std::vector<int> deg(g.n, 0);
    for (const Edge& e : g.edges) {
        g.measure[e.i] += e.w;
        g.measure[e.j] += e.w;
        ++deg[e.i];
        ++deg[e.j];
    }
    for (int x = 0; x < g.n; ++x)
        if (deg[x] == 0)
            throw std::invalid_argument("build_graph: isolated vertex " + std::to_string(x));

    g.adj_ptr.assign(g.n + 1, 0);
    for (int x = 0; x < g.n; ++x) g.adj_ptr[x + 1] = g.adj_ptr[x] + deg[x];
    g.adj_vtx.assign(g.adj_ptr[g.n], 0);
    g.adj_w.assign(g.adj_ptr[g.n], 0.0);
    std::vector<int> fill(g.adj_ptr.begin(), g.adj_ptr.end() - 1);
    for (const Edge& e : g.edges) {
        g.adj_vtx[fill[e.i]] = e.j;
        g.adj_w[fill[e.i]++] = e.w;
        g.adj_vtx[fill[e.j]] = e.i;
        g.adj_w[fill[e.j]++] = e.w;
    }

    g.connected = static_cast<int>(component_of(g, 0).size()) == g.n;
    return g;
}

WeightedGraph build_graph(std::vector<Edge> edges) {
    if (edges.empty()) throw std::invalid_argument("build_graph: empty edge list");
    int n = 0;
    for (const Edge& e : edges) n = std::max({n, e.i + 1, e.j + 1});
    return build_graph(n, std::move(edges));
}

void check_function(const WeightedGraph& g, std::span<const double> u, const char* what) {
    if (static_cast<int>(u.size()) != g.n)
        throw std::invalid_argument(std::string(what) + ": length " + std::to_string(u.size()) +
                                    " does not match vertex count " + std::to_string(g.n));
    for (std::size_t k = 0; k < u.size(); ++k)
        if (!std::isfinite(u[k]))
            throw std::invalid_argument(std::string(what) + ": non-finite value at vertex " +
                                        std::to_string(k));
}

double integral(const WeightedGraph& g, std::span<const double> u) {
    check_function(g, u, "integral");
    double s = 0.0;
    for (int x = 0; x < g.n; ++x) s += g.measure[x] * u[x];
    return s;
}

double integral_masked(const WeightedGraph& g, std::span<const double> u, std::span<const char> mask) {
    double s = 0.0;
    for (int x = 0; x < g.n; ++x)
        if (mask[x]) s += g.measure[x] * u[x];
    return s;
}

std::vector<int> distance_field(const WeightedGraph& g, int origin) {
    if (origin < 0 || origin >= g.n) throw std::invalid_argument("distance: origin out of range");
    std::vector<int> d(g.n, -1);
    std::queue<int> bfs;
    d[origin] = 0;
    bfs.push(origin);
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e) {
            int y = g.adj_vtx[e];
            if (d[y] < 0) { d[y] = d[x] + 1; bfs.push(y); }
        }
    }
    return d;
}

int distance(const WeightedGraph& g, int x, int origin) {
    if (x < 0 || x >= g.n) throw std::invalid_argument("distance: vertex out of range");
    std::vector<int> d = distance_field(g, origin);
    if (d[x] < 0) {
        auto comp = component_of(g, origin);
        throw std::runtime_error("distance: vertex " + std::to_string(x) +
                                 " unreachable from " + std::to_string(origin) +
                                 " (origin component has " + std::to_string(comp.size()) +
                                 " of " + std::to_string(g.n) + " vertices)");
    }
    return d[x];
}

DomainSpec make_domain(const WeightedGraph& g, std::vector<int> omega) {
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    if (omega.empty()) throw std::invalid_argument("make_domain: empty omega");
    for (int x : omega)
        if (x < 0 || x >= g.n)
            throw std::invalid_argument("make_domain: vertex " + std::to_string(x) + " out of range");

    DomainSpec d;
    d.omega = std::move(omega);
    d.in_omega.assign(g.n, 0);
    d.on_boundary.assign(g.n, 0);
    d.in_interior.assign(g.n, 0);
    for (int x : d.omega) d.in_omega[x] = 1;
    for (int x : d.omega) {
        bool bnd = false;
        for (int e = g.adj_ptr[x]; e < g.adj_ptr[x + 1]; ++e)
            if (!d.in_omega[g.adj_vtx[e]]) { bnd = true; break; }
        if (bnd) {
            d.boundary.push_back(x);
            d.on_boundary[x] = 1;
        } else {
            d.interior.push_back(x);
            d.in_interior[x] = 1;
        }
    }
    return d;
}

DomainSpec BallFamily::domain(const WeightedGraph& g, int k) const {
    if (k < 1 || k > K) throw std::invalid_argument("BallFamily::domain: k out of range");
    std::vector<int> omega;
    for (int x = 0; x < g.n; ++x)
        if (rho[x] >= 0 && rho[x] <= k) omega.push_back(x);
    return make_domain(g, std::move(omega));
}

BallFamily ball_family(const WeightedGraph& g, int center, int K) {
    if (K < 1) throw std::invalid_argument("ball_family: K must be >= 1");
    BallFamily f;
    f.center = center;
    f.K = K;
    f.rho = distance_field(g, center);
    f.balls.resize(K);
    f.shells.resize(K);
    for (int x = 0; x < g.n; ++x) {
        if (f.rho[x] < 0) continue;
        for (int k = 1; k <= K; ++k) {
            if (f.rho[x] < k) f.balls[k - 1].push_back(x);
            if (f.rho[x] == k) f.shells[k - 1].push_back(x);
        }
    }
    return f;
}

WeightedGraph gen_path(int n, double weight) {
    if (n < 2) throw std::invalid_argument("gen_path: need n >= 2");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, weight});
    return build_graph(n, std::move(e));
}

WeightedGraph gen_cycle(int n, double weight) {
    if (n < 3) throw std::invalid_argument("gen_cycle: need n >= 3");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, weight});
    e.push_back({0, n - 1, weight});
    return build_graph(n, std::move(e));
}

WeightedGraph gen_complete(int n, double weight) {
    if (n < 2) throw std::invalid_argument("gen_complete: need n >= 2");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j, weight});
    return build_graph(n, std::move(e));
}

WeightedGraph gen_star(int n, double weight) {
    if (n < 2) throw std::invalid_argument("gen_star: need n >= 2");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({0, i, weight});
    return build_graph(n, std::move(e));
}

WeightedGraph gen_grid(int a, int b, double weight) {
    if (a < 1 || b < 1 || a * b < 2) throw std::invalid_argument("gen_grid: need at least 2 vertices");
    std::vector<Edge> e;
    auto id = [b](int r, int c) { return r * b + c; };
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c) {
            if (c + 1 < b) e.push_back({id(r, c), id(r, c + 1), weight});
            if (r + 1 < a) e.push_back({id(r, c), id(r + 1, c), weight});
        }
    return build_graph(a * b, std::move(e));
}

WeightedGraph gen_random_connected(int n, double p, std::uint64_t seed, double weight) {
    if (n < 2) throw std::invalid_argument("gen_random_connected: need n >= 2");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("gen_random_connected: p must be in (0,1]");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Edge> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform() < p) e.push_back({i, j, weight});
        // reject draws with isolated vertices before building
        std::vector<int> deg(n, 0);
        for (const Edge& ed : e) { ++deg[ed.i]; ++deg[ed.j]; }
        if (std::find(deg.begin(), deg.end(), 0) != deg.end()) continue;
        WeightedGraph g = build_graph(n, std::move(e));
        if (g.connected) return g;
    }
    throw std::runtime_error("gen_random_connected: no connected sample after 100000 attempts");
}

WeightedGraph generate(const std::string& family, const std::vector<double>& params,
                       std::uint64_t seed, double weight) {
    auto iparam = [&](std::size_t k) {
        if (k >= params.size()) throw std::invalid_argument("generate: missing parameter for " + family);
        return static_cast<int>(params[k]);
    };
    if (family == "path") return gen_path(iparam(0), weight);
    if (family == "cycle") return gen_cycle(iparam(0), weight);
    if (family == "complete") return gen_complete(iparam(0), weight);
    if (family == "star") return gen_star(iparam(0), weight);
    if (family == "grid") return gen_grid(iparam(0), iparam(1), weight);
    if (family == "random-connected") {
        if (params.size() < 2) throw std::invalid_argument("generate: random-connected needs n p");
        return gen_random_connected(iparam(0), params[1], seed, weight);
    }
    throw std::invalid_argument("generate: unknown family '" + family + "'");
}

WeightedGraph rescale_unit_volume(const WeightedGraph& g) {
    double s = 1.0 / g.volume();
    std::vector<Edge> edges = g.edges;
    for (Edge& e : edges) e.w *= s;
    return build_graph(g.n, std::move(edges));
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.n;
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges) edges.push_back({e.i, e.j, e.w});
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

WeightedGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need fields 'vertices' and 'edges'");
    int n = j["vertices"].get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("graph json: each edge must be [i, j, w]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return build_graph(n, std::move(edges));
}

std::string graph_to_edgelist(const WeightedGraph& g) {
    std::string out = "# vertices " + std::to_string(g.n) + "\n";
    char buf[128];
    for (const Edge& e : g.edges) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.i, e.j, e.w);
        out += buf;
    }
    return out;
}

WeightedGraph graph_from_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Edge> edges;
    int declared_n = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (hash != std::string::npos) {
            std::istringstream cm(line.substr(hash + 1));
            std::string tag;
            if (cm >> tag && tag == "vertices") cm >> declared_n;
        }
        std::istringstream ls(body);
        int i, j;
        if (!(ls >> i >> j)) continue;
        double w = 1.0;
        ls >> w;
        edges.push_back({i, j, w});
    }
    if (edges.empty()) throw std::invalid_argument("edge list: no edges found");
    if (declared_n > 0) return build_graph(declared_n, std::move(edges));
    return build_graph(std::move(edges));
}

} // namespace grapde
