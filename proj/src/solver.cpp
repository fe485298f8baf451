#include "grapde/solver.hpp"

#include "grapde/linalg.hpp"
#include "grapde/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace grapde {

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::degenerate: return "degenerate";
    }
    return "?";
}

PairSpace PairSpace::of(const EnergyModel& model) {
    return PairSpace{admissible_space_u(model), admissible_space_v(model)};
}

FunctionPair PairSpace::decode(std::span<const double> coords) const {
    if (static_cast<int>(coords.size()) != dim())
        throw std::invalid_argument("PairSpace::decode: coordinate length mismatch");
    FunctionPair p;
    p.u = su.decode(coords.subspan(0, su.dim()));
    p.v = sv.decode(coords.subspan(su.dim()));
    return p;
}

std::vector<double> PairSpace::encode_pair(const FunctionPair& pair) const {
    std::vector<double> c = su.encode(pair.u);
    std::vector<double> cv = sv.encode(pair.v);
    c.insert(c.end(), cv.begin(), cv.end());
    return c;
}

std::vector<double> PairSpace::gradient_coords(const EnergyModel& model,
                                               const FunctionPair& pair) const {
    FunctionPair g = energy_gradient(model, pair);
    std::vector<double> c = su.encode(g.u);
    std::vector<double> cv = sv.encode(g.v);
    c.insert(c.end(), cv.begin(), cv.end());
    return c;
}

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::uint64_t coords_hash(const std::vector<double>& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : c) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

struct DescentResult {
    std::vector<double> coords;
    double energy = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    std::vector<double> energy_trace, grad_trace;
    bool hit_tol = false;
};

DescentResult armijo_descent(const EnergyModel& model, const PairSpace& space,
                             std::vector<double> c, const SolveConfig& cfg, double tol,
                             int iter_budget, bool keep_trace) {
    DescentResult res;
    double J = energy_value(model, space.decode(c));
    std::vector<double> recent{J};
    const int window = 10;
    int flat = 0;
    int it = 0;
    for (; it < iter_budget; ++it) {
        std::vector<double> gc = space.gradient_coords(model, space.decode(c));
        double gn = norm2(gc);
        if (keep_trace) {
            res.energy_trace.push_back(J);
            res.grad_trace.push_back(gn);
        }
        if (gn <= tol) {
            res.hit_tol = true;
            break;
        }
        double ref = J;
        if (cfg.nonmonotone)
            ref = *std::max_element(recent.begin(), recent.end());
        double alpha = cfg.armijo_init_step / std::max(1.0, gn);
        bool moved = false;
        double Jn = J;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cn(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) cn[i] = c[i] - alpha * gc[i];
            Jn = energy_value(model, space.decode(cn));
            if (Jn <= ref - cfg.armijo_c1 * alpha * gn * gn) {
                c = std::move(cn);
                moved = true;
                break;
            }
            alpha *= cfg.armijo_backtrack;
        }
        if (!moved) break;
        // saddle/plateau guard: the Armijo threshold underflows once the
        // gradient is tiny, so watch the actual decrease
        if (J - Jn <= 1e-15 * (1.0 + std::abs(J)))
            ++flat;
        else
            flat = 0;
        J = Jn;
        if (flat > 30) break;
        recent.push_back(J);
        if (static_cast<int>(recent.size()) > window) recent.erase(recent.begin());
    }
    res.coords = std::move(c);
    res.energy = J;
    res.grad_norm = norm2(space.gradient_coords(model, space.decode(res.coords)));
    res.iterations = it;
    return res;
}

// max-abs of the projected gradient field, the per-vertex EL residual
struct ElResidual {
    GraphFunction u, v;
    double max_abs = 0.0;
};

ElResidual el_residual_of(const EnergyModel& model, const PairSpace& space,
                          const FunctionPair& pair) {
    FunctionPair g = energy_gradient(model, pair);
    ElResidual r;
    r.u = space.su.project(g.u);
    r.v = space.sv.project(g.v);
    for (double x : r.u) r.max_abs = std::max(r.max_abs, std::abs(x));
    for (double x : r.v) r.max_abs = std::max(r.max_abs, std::abs(x));
    return r;
}

// Residual of the Toda system in its literal normalized-source form,
// L u = phi1 (e1 - 1), L v = phi2 (e2 - 1). The solver certifies the
// projected EL condition instead; the literal form integrates to
// phi (1 - Vol(V)) over the graph, so it can only vanish at Vol(V) = 1 and
// is reported, never asserted.
double literal_toda_residual(const EnergyModel& model, const FunctionPair& pair) {
    if (model.tag != ModelTag::J1Toda && model.tag != ModelTag::J1Dirichlet) return 0.0;
    const WeightedGraph& g = *model.graph;
    GraphFunction w1(g.n), w2(g.n);
    for (int x = 0; x < g.n; ++x) {
        w1[x] = 2.0 * pair.u[x] - pair.v[x];
        w2[x] = -pair.u[x] + 2.0 * pair.v[x];
    }
    std::span<const char> mask =
        model.domain ? std::span<const char>(model.domain->in_omega) : std::span<const char>();
    GraphFunction e1(g.n, 0.0), e2(g.n, 0.0);
    double i1 = 0.0, i2 = 0.0;
    for (int x = 0; x < g.n; ++x) {
        if (!mask.empty() && !mask[x]) continue;
        i1 += g.measure[x] * std::exp(w1[x]);
        i2 += g.measure[x] * std::exp(w2[x]);
    }
    GraphFunction Lu = poly_energy_gradient(g, pair.u, model.m, 2.0, mask);
    GraphFunction Lv = poly_energy_gradient(g, pair.v, model.n, 2.0, mask);
    double worst = 0.0;
    for (int x = 0; x < g.n; ++x) {
        bool active = model.domain ? static_cast<bool>(model.domain->in_interior[x]) : true;
        if (!active) continue;
        double ru = Lu[x] - model.phi1 * (std::exp(w1[x]) / i1 - 1.0);
        double rv = Lv[x] - model.phi2 * (std::exp(w2[x]) / i2 - 1.0);
        worst = std::max({worst, std::abs(ru), std::abs(rv)});
    }
    return worst;
}

void fill_positivity(const EnergyModel& model, SolveReport& rep) {
    const WeightedGraph& g = *model.graph;
    bool up = true, vp = true;
    if (model.domain) {
        for (int x : model.domain->interior) {
            up = up && rep.solution.u[x] > 0.0;
            vp = vp && rep.solution.v[x] > 0.0;
        }
    } else {
        for (int x = 0; x < g.n; ++x) {
            up = up && rep.solution.u[x] > 0.0;
            vp = vp && rep.solution.v[x] > 0.0;
        }
    }
    rep.u_positive = up;
    rep.v_positive = vp;
}

void finalize_report(const EnergyModel& model, const PairSpace& space, SolveReport& rep,
                     const SolveConfig& cfg) {
    ElResidual el = el_residual_of(model, space, rep.solution);
    rep.el_residual_u = std::move(el.u);
    rep.el_residual_v = std::move(el.v);
    rep.el_residual_max = el.max_abs;
    rep.solution_norm = norm2(space.encode_pair(rep.solution));
    rep.literal_system_residual_max = literal_toda_residual(model, rep.solution);
    FunctionPair zero{GraphFunction(model.graph->n, 0.0), GraphFunction(model.graph->n, 0.0)};
    rep.energy_at_zero = energy_value(model, zero);
    fill_positivity(model, rep);
    if (rep.status == SolveStatus::converged &&
        !(rep.final_grad_norm <= cfg.grad_tol && rep.el_residual_max <= 10.0 * cfg.grad_tol))
        rep.status = SolveStatus::max_iter;
}

struct NewtonOutcome {
    std::vector<double> coords;
    double residual = 0.0;
    bool converged = false;
    bool diverged = false;
    std::vector<double> residual_trace;
    int steps = 0;
};

NewtonOutcome newton_iterate(const EnergyModel& model, const PairSpace& space,
                             std::vector<double> c, const SolveConfig& cfg, double tol,
                             int max_steps) {
    NewtonOutcome out;
    const int d = static_cast<int>(c.size());
    auto Fof = [&](const std::vector<double>& cc) {
        return space.gradient_coords(model, space.decode(cc));
    };
    std::vector<double> F = Fof(c);
    double fn = norm2(F);
    out.residual_trace.push_back(fn);
    double best_seen = fn;
    for (int step = 0; step < max_steps; ++step) {
        if (fn <= tol) {
            out.converged = true;
            break;
        }
        // divergence guard: residual grew an order of magnitude over the window
        if (out.residual_trace.size() > 20 &&
            fn > 10.0 * out.residual_trace[out.residual_trace.size() - 21] &&
            fn > 10.0 * best_seen) {
            out.diverged = true;
            break;
        }
        linalg::Mat Jm(d, d);
        for (int j = 0; j < d; ++j) {
            double h = 1e-6 * (1.0 + std::abs(c[j]));
            std::vector<double> cp = c, cm = c;
            cp[j] += h;
            cm[j] -= h;
            std::vector<double> Fp = Fof(cp), Fm = Fof(cm);
            for (int i = 0; i < d; ++i) Jm.at(i, j) = (Fp[i] - Fm[i]) / (2.0 * h);
        }
        std::vector<double> rhs(d), delta;
        for (int i = 0; i < d; ++i) rhs[i] = -F[i];
        bool solved = linalg::lu_solve(Jm, rhs, delta);
        bool moved = false;
        if (solved) {
            double t = 1.0;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> cn(d);
                for (int i = 0; i < d; ++i) cn[i] = c[i] + t * delta[i];
                std::vector<double> Fn = Fof(cn);
                double fnn = norm2(Fn);
                if (fnn <= (1.0 - 1e-4 * t) * fn) {
                    c = std::move(cn);
                    F = std::move(Fn);
                    fn = fnn;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
        }
        if (!moved) {
            // singular or stalled Jacobian: plain energy descent step
            double J = energy_value(model, space.decode(c));
            double alpha = 1.0 / std::max(1.0, fn);
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> cn(d);
                for (int i = 0; i < d; ++i) cn[i] = c[i] - alpha * F[i];
                double Jn = energy_value(model, space.decode(cn));
                if (Jn < J - cfg.armijo_c1 * alpha * fn * fn) {
                    c = std::move(cn);
                    F = Fof(c);
                    fn = norm2(F);
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
        }
        if (!moved) break;
        best_seen = std::min(best_seen, fn);
        out.residual_trace.push_back(fn);
        out.steps = step + 1;
    }
    if (fn <= tol) out.converged = true;
    out.coords = std::move(c);
    out.residual = fn;
    return out;
}

// tighten the coordinate tolerance so that max-abs vertex residuals meet the
// 10x contract even on small-measure vertices
double effective_tol(const WeightedGraph& g, double grad_tol) {
    double psi0 = g.min_measure();
    return grad_tol * std::min(1.0, std::sqrt(psi0)) * 0.5;
}

} // namespace

SolveReport minimize_direct(const EnergyModel& model, const SolveConfig& cfg) {
    if (!model.graph->connected)
        throw std::invalid_argument("minimize_direct: graph must be connected");
    PairSpace space = PairSpace::of(model);
    const int d = space.dim();
    const double tol = effective_tol(*model.graph, cfg.grad_tol);

    const int starts = std::max(1, cfg.multi_start);
    std::vector<std::vector<double>> inits(starts);
    for (int s = 0; s < starts; ++s) {
        inits[s].assign(d, 0.0);
        if (s == 0) {
            // asymmetric deterministic start (a symmetric one can sit on the
            // stable manifold of a saddle)
            for (int i = 0; i < d; ++i)
                inits[s][i] = (i % 2 == 0 ? 0.12 : -0.08) * (1.0 + 0.03 * i);
        } else if (s == 1) {
            inits[s][0] = 0.5;
        } else {
            Rng fr = Rng(cfg.seed).fork(s);
            for (double& v : inits[s]) v = fr.normal() * 0.5;
        }
    }

    std::vector<DescentResult> runs(starts);
    int budget = std::max(100, cfg.max_iter / starts);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < starts; ++s)
        runs[s] = armijo_descent(model, space, inits[s], cfg, tol, budget, cfg.keep_trace);

    int best = 0;
    std::uint64_t best_hash = coords_hash(runs[0].coords);
    for (int s = 1; s < starts; ++s) {
        std::uint64_t h = coords_hash(runs[s].coords);
        if (runs[s].energy < runs[best].energy ||
            (runs[s].energy == runs[best].energy && h < best_hash)) {
            best = s;
            best_hash = h;
        }
    }
    DescentResult& win = runs[best];

    SolveReport rep;
    rep.solution = space.decode(win.coords);
    rep.critical_value = win.energy;
    rep.final_grad_norm = win.grad_norm;
    rep.iterations = win.iterations;
    rep.energy_trace = std::move(win.energy_trace);
    rep.grad_norm_trace = std::move(win.grad_trace);
    rep.status = win.grad_norm <= cfg.grad_tol ? SolveStatus::converged : SolveStatus::max_iter;
    if (model.tag == ModelTag::J1Toda) {
        FunctionPair zero{GraphFunction(model.graph->n, 0.0), GraphFunction(model.graph->n, 0.0)};
        double j0 = energy_value(model, zero);
        if (win.energy > j0 + 1e-12)
            rep.note = "minimum above J(0,0); landscape certificate failed";
    }
    finalize_report(model, space, rep, cfg);
    return rep;
}

SolveReport newton_refine(const EnergyModel& model, const FunctionPair& start,
                          const SolveConfig& cfg) {
    PairSpace space = PairSpace::of(model);
    std::vector<double> c0 = space.encode_pair(start);
    const double tol = effective_tol(*model.graph, cfg.grad_tol);
    NewtonOutcome out = newton_iterate(model, space, c0, cfg, tol, 200);

    SolveReport rep;
    if (out.diverged) {
        rep.solution = start;
        rep.status = SolveStatus::degenerate;
        rep.note = "newton diverged; start returned";
        rep.final_grad_norm = norm2(space.gradient_coords(model, start));
    } else {
        rep.solution = space.decode(out.coords);
        rep.final_grad_norm = out.residual;
        rep.status = out.converged ? SolveStatus::converged : SolveStatus::max_iter;
        if (out.converged && norm2(out.coords) <= 1e-10) {
            rep.status = SolveStatus::degenerate;
            rep.note = "trivial critical point (0,0)";
        }
    }
    rep.iterations = out.steps;
    rep.grad_norm_trace = std::move(out.residual_trace);
    rep.critical_value = energy_value(model, rep.solution);
    finalize_report(model, space, rep, cfg);
    if (rep.status == SolveStatus::degenerate && rep.note.empty())
        rep.note = "degenerate refinement";
    return rep;
}

namespace {

bool mountain_pass_tag(ModelTag t) {
    switch (t) {
    case ModelTag::J3Dirichlet:
    case ModelTag::J4PLap:
    case ModelTag::J5Poly:
    case ModelTag::J6Global:
    case ModelTag::J7PLapGlobal:
    case ModelTag::JvmnPolyGlobal: return true;
    default: return false;
    }
}

} // namespace

SolveReport mountain_pass(const EnergyModel& model, const SolveConfig& cfg) {
    if (!mountain_pass_tag(model.tag))
        throw std::invalid_argument("mountain_pass: model must be one of J3..J7/Jvmn");
    if (!model.graph->connected)
        throw std::invalid_argument("mountain_pass: graph must be connected");
    PairSpace space = PairSpace::of(model);
    const int d = space.dim();
    const double tol = effective_tol(*model.graph, cfg.grad_tol);
    const int N = std::max(3, cfg.path_nodes);
    Rng rng(cfg.seed);

    SolveReport best_fallback;
    bool have_fallback = false;
    int node_steps = 0;

    const int attempts = std::max(1, cfg.multi_start);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        // admissible direction; the first is the positive cone so every
        // coupled interaction term is active
        std::vector<double> w(d, 0.0);
        if (attempt == 0) {
            for (double& v : w) v = 1.0;
        } else {
            Rng fr = rng.fork(attempt);
            for (double& v : w) v = 0.3 + fr.uniform();
            if (attempt % 2 == 0)
                for (int i = 0; i < d; ++i) w[i] *= (fr.uniform() < 0.5 ? 1.0 : -1.0);
        }
        double wn = norm2(w);
        for (double& v : w) v /= wn;

        // (1) ray doubling until J < 0
        double t = 1.0;
        bool neg = false;
        for (int k = 0; k < 60; ++k) {
            std::vector<double> z(d);
            for (int i = 0; i < d; ++i) z[i] = t * w[i];
            if (energy_value(model, space.decode(z)) < 0.0) {
                neg = true;
                break;
            }
            t *= cfg.ray_growth;
        }
        if (!neg) {
            if (attempt + 1 == attempts)
                throw std::runtime_error(
                    "no mountain geometry: ray search found no negative energy in 60 doublings");
            continue;
        }
        std::vector<double> z1(d);
        for (int i = 0; i < d; ++i) z1[i] = t * w[i];

        // mountain radius estimate from the initial segment
        double peak = -std::numeric_limits<double>::infinity(), peak_norm = 0.0;
        for (int j = 1; j <= 200; ++j) {
            double s = static_cast<double>(j) / 200.0;
            std::vector<double> z(d);
            for (int i = 0; i < d; ++i) z[i] = s * z1[i];
            double J = energy_value(model, space.decode(z));
            if (J > peak) {
                peak = J;
                peak_norm = s * t;
            }
        }
        double radius = 0.5 * peak_norm;

        // (2) discrete path from (0,0) to (u0,v0)
        std::vector<std::vector<double>> path(N, std::vector<double>(d, 0.0));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < d; ++j)
                path[i][j] = z1[j] * static_cast<double>(i) / (N - 1);

        std::vector<double> energy_trace, grad_trace;
        int newton_failures = 0;
        int stagnation = 0;
        double last_max = std::numeric_limits<double>::infinity();

        // gradient component transverse to the local path direction; descending
        // along the full gradient would slide nodes off the ridge into the
        // valleys (on symmetric instances the gradient is exactly tangent)
        auto transverse = [&](int i, const std::vector<double>& g) {
            std::vector<double> t(d);
            double tn = 0.0;
            for (int k = 0; k < d; ++k) {
                t[k] = path[i + 1][k] - path[i - 1][k];
                tn += t[k] * t[k];
            }
            tn = std::sqrt(tn);
            std::vector<double> out = g;
            if (tn < 1e-300) return out;
            double dot = 0.0;
            for (int k = 0; k < d; ++k) dot += g[k] * t[k] / tn;
            for (int k = 0; k < d; ++k) out[k] -= dot * t[k] / tn;
            return out;
        };
        auto spacing = [&](int i) {
            double a = 0.0, b = 0.0;
            for (int k = 0; k < d; ++k) {
                a += (path[i][k] - path[i - 1][k]) * (path[i][k] - path[i - 1][k]);
                b += (path[i + 1][k] - path[i][k]) * (path[i + 1][k] - path[i][k]);
            }
            return std::sqrt(std::min(a, b));
        };
        auto redistribute = [&]() {
            std::vector<double> arc(N, 0.0);
            for (int i = 1; i < N; ++i) {
                double s = 0.0;
                for (int k = 0; k < d; ++k)
                    s += (path[i][k] - path[i - 1][k]) * (path[i][k] - path[i - 1][k]);
                arc[i] = arc[i - 1] + std::sqrt(s);
            }
            if (arc[N - 1] < 1e-300) return;
            std::vector<std::vector<double>> fresh(N, std::vector<double>(d));
            fresh[0] = path[0];
            fresh[N - 1] = path[N - 1];
            int seg = 1;
            for (int i = 1; i + 1 < N; ++i) {
                double target = arc[N - 1] * i / (N - 1);
                while (seg < N - 1 && arc[seg] < target) ++seg;
                double h = arc[seg] - arc[seg - 1];
                double w = h < 1e-300 ? 0.0 : (target - arc[seg - 1]) / h;
                for (int k = 0; k < d; ++k)
                    fresh[i][k] = (1.0 - w) * path[seg - 1][k] + w * path[seg][k];
            }
            path = std::move(fresh);
        };

        while (node_steps < cfg.max_iter) {
            // (3) maximal-energy interior node
            int istar = 1;
            double Jmax = -std::numeric_limits<double>::infinity();
            for (int i = 1; i + 1 < N; ++i) {
                double J = energy_value(model, space.decode(path[i]));
                if (J > Jmax) {
                    Jmax = J;
                    istar = i;
                }
            }
            std::vector<double> gc = space.gradient_coords(model, space.decode(path[istar]));
            double gn = norm2(gc);
            double dn = norm2(transverse(istar, gc));
            if (cfg.keep_trace) {
                energy_trace.push_back(Jmax);
                grad_trace.push_back(gn);
            }

            bool try_newton = gn <= std::max(1e-3, 1e4 * tol) ||
                              dn <= 1e-4 * std::max(1.0, gn) ||
                              (node_steps > 0 && node_steps % 400 == 0);
            if (try_newton && newton_failures < 6) {
                NewtonOutcome nt = newton_iterate(model, space, path[istar], cfg, tol, 120);
                double nn = norm2(nt.coords);
                double Jn = nt.converged ? energy_value(model, space.decode(nt.coords))
                                         : -std::numeric_limits<double>::infinity();
                if (nt.converged && nn >= radius && Jn > 0.0) {
                    SolveReport rep;
                    rep.solution = space.decode(nt.coords);
                    rep.critical_value = Jn;
                    rep.final_grad_norm = nt.residual;
                    rep.status = SolveStatus::converged;
                    rep.mountain_radius_estimate = radius;
                    rep.iterations = node_steps;
                    rep.energy_trace = std::move(energy_trace);
                    rep.grad_norm_trace = std::move(grad_trace);
                    for (double r : nt.residual_trace) rep.grad_norm_trace.push_back(r);

                    // positivity postprocessing: flip to (|u|,|v|) (never increases
                        // the energy) and re-refine
                    if (model.tag == ModelTag::J3Dirichlet || model.tag == ModelTag::J4PLap ||
                        model.tag == ModelTag::J6Global || model.tag == ModelTag::J7PLapGlobal) {
                        FunctionPair flipped = rep.solution;
                        bool had_negative = false;
                        for (auto& x : flipped.u) {
                            had_negative = had_negative || x < 0.0;
                            x = std::abs(x);
                        }
                        for (auto& x : flipped.v) {
                            had_negative = had_negative || x < 0.0;
                            x = std::abs(x);
                        }
                        if (had_negative) {
                            NewtonOutcome nf =
                                newton_iterate(model, space, space.encode_pair(flipped), cfg, tol, 120);
                            if (nf.converged && norm2(nf.coords) >= radius) {
                                FunctionPair cand = space.decode(nf.coords);
                                double Jf = energy_value(model, cand);
                                if (Jf > 0.0) {
                                    rep.solution = cand;
                                    rep.critical_value = Jf;
                                    rep.final_grad_norm = nf.residual;
                                }
                            }
                        }
                    }
                    finalize_report(model, space, rep, cfg);
                    if (rep.status == SolveStatus::converged) return rep;
                }
                ++newton_failures;
            }

            // transverse descent step on the max node, then local
            // re-relaxation; steps are capped by the node spacing so the
            // deformation stays quasi-continuous (no ridge hopping)
            auto step_node = [&](int i) {
                std::vector<double> gci = space.gradient_coords(model, space.decode(path[i]));
                std::vector<double> dir = transverse(i, gci);
                double dni = norm2(dir);
                if (dni <= 1e-300) return;
                double J = energy_value(model, space.decode(path[i]));
                double cap = 0.5 * std::max(spacing(i), 1e-12) / dni;
                double alpha = std::min(cfg.armijo_init_step / std::max(1.0, dni), cap);
                for (int bt = 0; bt < 40; ++bt) {
                    std::vector<double> cn(d);
                    for (int k = 0; k < d; ++k) cn[k] = path[i][k] - alpha * dir[k];
                    double Jn = energy_value(model, space.decode(cn));
                    if (Jn <= J - cfg.armijo_c1 * alpha * dni * dni) {
                        path[i] = std::move(cn);
                        return;
                    }
                    alpha *= cfg.armijo_backtrack;
                }
            };
            step_node(istar);
            if (istar - 1 >= 1) step_node(istar - 1);
            if (istar + 1 <= N - 2) step_node(istar + 1);
            ++node_steps;
            if (node_steps % 25 == 0) redistribute();

            if (Jmax >= last_max - 1e-14 * std::max(1.0, std::abs(last_max)))
                ++stagnation;
            else
                stagnation = 0;
            last_max = Jmax;
            if (stagnation > 300 || newton_failures >= 6) break; // reseed
        }

        // keep the best effort in case every attempt stalls
        int istar = 1;
        double Jmax = -std::numeric_limits<double>::infinity();
        for (int i = 1; i + 1 < N; ++i) {
            double J = energy_value(model, space.decode(path[i]));
            if (J > Jmax) {
                Jmax = J;
                istar = i;
            }
        }
        SolveReport rep;
        rep.solution = space.decode(path[istar]);
        rep.critical_value = Jmax;
        rep.final_grad_norm = norm2(space.gradient_coords(model, rep.solution));
        rep.status = SolveStatus::max_iter;
        rep.mountain_radius_estimate = radius;
        rep.iterations = node_steps;
        rep.note = "path deformation stalled";
        finalize_report(model, space, rep, cfg);
        if (!have_fallback || rep.final_grad_norm < best_fallback.final_grad_norm) {
            best_fallback = rep;
            have_fallback = true;
        }
        if (node_steps >= cfg.max_iter) break;
    }
    if (!have_fallback) throw std::runtime_error("mountain_pass: no usable attempt");
    return best_fallback;
}

ExhaustFamily make_exhaust_family(const std::string& name, int K, double ratio) {
    if (K < 1) throw std::invalid_argument("make_exhaust_family: K >= 1");
    if (!(ratio > 0.0))
        throw std::invalid_argument("make_exhaust_family: weight ratio must be positive");
    ExhaustFamily fam;
    fam.name = name;
    int R = K + 1;
    if (name == "path") {
        int n = 2 * R + 1;
        fam.center = R;
        std::vector<Edge> e;
        for (int i = 0; i + 1 < n; ++i) {
            int depth = std::min(std::abs(i - R), std::abs(i + 1 - R));
            e.push_back({i, i + 1, std::pow(ratio, depth)});
        }
        fam.host = build_graph(n, std::move(e));
    } else if (name == "grid") {
        int side = 2 * R + 1;
        fam.center = R * side + R;
        auto rho = [&](int r, int c) { return std::abs(r - R) + std::abs(c - R); };
        std::vector<Edge> e;
        auto id = [&](int r, int c) { return r * side + c; };
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) {
                if (c + 1 < side)
                    e.push_back({id(r, c), id(r, c + 1),
                                 std::pow(ratio, std::min(rho(r, c), rho(r, c + 1)))});
                if (r + 1 < side)
                    e.push_back({id(r, c), id(r + 1, c),
                                 std::pow(ratio, std::min(rho(r, c), rho(r + 1, c)))});
            }
        fam.host = build_graph(side * side, std::move(e));
    } else {
        throw std::invalid_argument("make_exhaust_family: family must be path or grid");
    }
    fam.balls = ball_family(fam.host, fam.center, K);
    fam.declared_omega0 = fam.host.min_weight();
    return fam;
}

ExhaustionReport exhaustion_solve(const ExhaustFamily& family, double phi1, double phi2, int m,
                                  int n, const std::vector<int>& window, const SolveConfig& cfg) {
    const WeightedGraph& host = family.host;
    const int K = family.balls.K;
    for (std::size_t k = 1; k < family.balls.balls.size(); ++k)
        if (family.balls.balls[k].size() < family.balls.balls[k - 1].size())
            throw std::invalid_argument("exhaustion_solve: ball family not monotone");
    for (int x : window) {
        if (x < 0 || x >= host.n)
            throw std::invalid_argument("exhaustion_solve: window vertex out of range");
        if (family.balls.rho[x] < 0 || family.balls.rho[x] >= K)
            throw std::invalid_argument("exhaustion_solve: window vertex " + std::to_string(x) +
                                        " not contained in any ball of radius <= K");
    }

    ExhaustionReport out;
    FunctionPair prev;
    bool have_prev = false;
    for (int k = 1; k <= K; ++k) {
        DomainSpec dom = family.balls.domain(host, k);
        EnergyModel mdl = make_j1_dirichlet(host, dom, phi1, phi2, m, n);
        SolveConfig ballcfg = cfg;
        ballcfg.keep_trace = false;
        SolveReport direct = minimize_direct(mdl, ballcfg);
        SolveReport polished = newton_refine(mdl, direct.solution, ballcfg);
        const SolveReport& rep =
            polished.critical_value <= direct.critical_value + 1e-12 &&
                    polished.status != SolveStatus::degenerate
                ? polished
                : direct;

        out.ball_sizes.push_back(static_cast<int>(family.balls.balls[k - 1].size()));
        out.energies.push_back(rep.critical_value);
        out.el_residuals.push_back(rep.el_residual_max);
        out.statuses.push_back(status_name(rep.status));
        if (have_prev) {
            double diff = 0.0;
            for (int x : window) {
                diff = std::max(diff, std::abs(rep.solution.u[x] - prev.u[x]));
                diff = std::max(diff, std::abs(rep.solution.v[x] - prev.v[x]));
            }
            out.window_diffs.push_back(diff);
        }
        prev = rep.solution;
        have_prev = true;
        if (k == K) out.final_solution = rep.solution;
    }
    out.final_window_diff = out.window_diffs.empty() ? 0.0 : out.window_diffs.back();
    return out;
}

} // namespace grapde
