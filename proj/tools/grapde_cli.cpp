// grapde: batch front door for graph elliptic-system experiments.
// Subcommands: gen, spectrum, solve, exhaust, check. Reports are JSON with
// the run manifest embedded; optional CSV for plotting.

#include "grapde/json_io.hpp"
#include "grapde/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using grapde::io::json;
constexpr const char* kVersion = "0.1.0";

struct Manifest {
    std::string subcommand;
    json inputs = json::object();
    json config = json::object();
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    json finish() const {
        json m;
        m["subcommand"] = subcommand;
        m["inputs"] = inputs;
        m["config"] = config;
        m["seed"] = seed;
        m["tool_version"] = kVersion;
        m["wall_time_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return m;
    }
};

grapde::WeightedGraph load_graph(const std::string& path) {
    std::string text = grapde::io::read_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return grapde::graph_from_json(text);
    // sniff: JSON object or plain edge list
    for (char c : text) {
        if (c == '{') return grapde::graph_from_json(text);
        if (!std::isspace(static_cast<unsigned char>(c))) break;
    }
    return grapde::graph_from_edgelist(text);
}

void emit(const std::string& out_path, json report) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        grapde::io::write_file(out_path, text);
}

int run_gen(const std::string& family, int n, int a, int b, double p, double weight,
            std::uint64_t seed, const std::string& out, const std::string& format) {
    std::vector<double> params;
    if (family == "grid") {
        int aa = a > 0 ? a : n, bb = b > 0 ? b : n;
        params = {static_cast<double>(aa), static_cast<double>(bb)};
    } else if (family == "random-connected") {
        params = {static_cast<double>(n), p};
    } else {
        params = {static_cast<double>(n)};
    }
    grapde::WeightedGraph g = grapde::generate(family, params, seed, weight);
    if (format == "edgelist") {
        grapde::io::write_file(out, grapde::graph_to_edgelist(g));
    } else {
        grapde::io::write_file(out, grapde::graph_to_json(g));
    }
    std::cout << "wrote " << out << " (" << g.n << " vertices, " << g.edges.size()
              << " edges, connected=" << (g.connected ? "true" : "false") << ")\n";
    return 0;
}

int run_spectrum(const std::string& graph_path, int m, double q, int origin,
                 const std::string& out, Manifest man) {
    grapde::WeightedGraph g = load_graph(graph_path);
    if (!g.connected) throw std::invalid_argument("spectrum: graph must be connected");
    grapde::EigenData eig = grapde::first_eigenvalue(g);
    grapde::EmbeddingConstant cst = grapde::sobolev_constant_cstar(g, eig, m, q, origin);

    double mean_worst = 0.0, resid_worst = 0.0;
    for (const auto& bvec : eig.basis) {
        mean_worst = std::max(mean_worst, std::abs(grapde::integral(g, bvec)));
        grapde::GraphFunction lb = grapde::laplacian(g, bvec);
        double sup = 0.0, rsup = 0.0;
        for (int x = 0; x < g.n; ++x) {
            sup = std::max(sup, std::abs(bvec[x]));
            rsup = std::max(rsup, std::abs(lb[x] + eig.lambda1 * bvec[x]));
        }
        resid_worst = std::max(resid_worst, rsup / std::max(sup, 1e-300));
    }

    json j;
    j["manifest"] = man.finish();
    j["lambda1"] = eig.lambda1;
    j["rayleigh_value"] = eig.rayleigh_value;
    j["multiplicity"] = eig.multiplicity;
    json basis = json::array();
    for (const auto& bvec : eig.basis) {
        json row = json::array();
        for (double v : bvec) row.push_back(v);
        basis.push_back(std::move(row));
    }
    j["basis"] = std::move(basis);
    j["cstar"] = {{"value", cst.value},
                  {"linf_constant", cst.linf_constant},
                  {"terms", {cst.term_path, cst.term_origin, cst.term_even}},
                  {"m", m},
                  {"q", q},
                  {"origin", origin},
                  {"formula_faithful_only", cst.formula_faithful_only}};
    j["checks"] = {{"eigen_residual_max", resid_worst},
                   {"mean_zero_max", mean_worst},
                   {"power_identity_dev_m3",
                    grapde::eigenspace_power_identity(g, eig, 3, 16, man.seed)}};
    emit(out, std::move(j));
    return 0;
}

int run_solve(const std::string& model_path, const std::string& graph_path,
              const std::string& omega_path, const std::string& out, const std::string& csv,
              const std::string& method, double tol, int max_iter, std::uint64_t seed, bool trace,
              bool unit_volume, Manifest man) {
    grapde::WeightedGraph g = load_graph(graph_path);
    if (unit_volume) g = grapde::rescale_unit_volume(g);
    std::optional<grapde::DomainSpec> dom;
    if (!omega_path.empty())
        dom = grapde::io::domain_from_json(
            g, nlohmann::json::parse(grapde::io::read_file(omega_path)));
    nlohmann::json mj = nlohmann::json::parse(grapde::io::read_file(model_path));
    grapde::EnergyModel model = grapde::io::model_from_json(g, dom, mj);

    grapde::SolveConfig cfg;
    cfg.grad_tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    cfg.keep_trace = trace;
    if (model.tag == grapde::ModelTag::J1Toda && model.eig->multiplicity >= 2)
        cfg.nonmonotone = true;

    std::string how = method;
    if (how == "auto")
        how = (model.tag == grapde::ModelTag::J1Toda ||
               model.tag == grapde::ModelTag::J1Dirichlet)
                  ? "direct"
                  : "mountain";
    grapde::SolveReport rep;
    if (how == "direct")
        rep = grapde::minimize_direct(model, cfg);
    else if (how == "mountain")
        rep = grapde::mountain_pass(model, cfg);
    else
        throw std::invalid_argument("solve: unknown --method '" + method + "'");

    grapde::CheckReport audit = grapde::solution_audit(model, rep, 10.0 * tol);

    json j;
    j["manifest"] = man.finish();
    json body = grapde::io::solve_report_json(model, rep, trace);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    j["audit"] = grapde::io::check_report_json(audit);
    j["hypotheses"] = grapde::io::hypothesis_report_json(grapde::validate_hypotheses(model));
    emit(out, std::move(j));
    if (!csv.empty())
        grapde::io::write_file(csv, grapde::io::pair_csv(g, rep.solution.u, rep.solution.v,
                                                         rep.el_residual_u, rep.el_residual_v));
    return rep.status == grapde::SolveStatus::converged ? 0 : 2;
}

int run_exhaust(const std::string& family, int K, const std::string& window_csv, double ratio,
                double phi1, double phi2, int m, int n, const std::string& out, double tol,
                int max_iter, std::uint64_t seed, Manifest man) {
    grapde::ExhaustFamily fam = grapde::make_exhaust_family(family, K, ratio);
    std::vector<int> window;
    if (window_csv.empty()) {
        window = {fam.center};
    } else {
        std::stringstream ss(window_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) window.push_back(std::stoi(tok));
    }
    grapde::SolveConfig cfg;
    cfg.grad_tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    grapde::ExhaustionReport rep = grapde::exhaustion_solve(fam, phi1, phi2, m, n, window, cfg);

    json j;
    j["manifest"] = man.finish();
    j["window"] = window;
    json body = grapde::io::exhaustion_report_json(fam, rep);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    emit(out, std::move(j));
    return 0;
}

int run_check(const std::string& what, const std::string& in_path, const std::string& graph_path,
              const std::string& out, std::uint64_t seed, Manifest man) {
    nlohmann::json in = nlohmann::json::parse(grapde::io::read_file(in_path));
    grapde::CheckReport rep;
    if (what == "smp") {
        grapde::WeightedGraph g = graph_path.empty()
                                      ? grapde::graph_from_json(in.at("graph").dump())
                                      : load_graph(graph_path);
        auto field = [&](const char* name, double dflt) {
            grapde::GraphFunction f(g.n, dflt);
            if (in.contains(name)) {
                if (in.at(name).is_number()) {
                    f.assign(g.n, in.at(name).get<double>());
                } else {
                    for (int x = 0; x < g.n; ++x) f[x] = in.at(name)[x].get<double>();
                }
            }
            return f;
        };
        rep = grapde::smp_check(g, field("u", 0.0), field("v", 0.0), field("h1", 0.0),
                                field("h2", 0.0), in.value("p", 2.0), in.value("q", 2.0));
    } else if (what == "embedding") {
        grapde::WeightedGraph g = graph_path.empty()
                                      ? grapde::graph_from_json(in.at("graph").dump())
                                      : load_graph(graph_path);
        int m = in.value("m", 1);
        double q = in.value("q", 2.0);
        int samples = in.value("samples", 200);
        std::string space = in.value("space", "eigenspace");
        if (space == "eigenspace") {
            grapde::EigenData eig = grapde::first_eigenvalue(g);
            rep = grapde::embedding_audit_eigenspace(g, eig, m, q, in.value("origin", 0), samples,
                                                     seed);
        } else {
            grapde::SobolevSpec spec;
            spec.m = m;
            spec.p = in.value("p", 2.0);
            if (in.contains("omega")) {
                std::vector<int> om;
                for (const auto& v : in.at("omega")) om.push_back(v.get<int>());
                spec.domain = grapde::make_domain(g, om);
            } else {
                spec.h = grapde::GraphFunction(g.n, in.value("h", 1.0));
            }
            rep = grapde::embedding_audit_sobolev(g, spec, q, samples, seed);
        }
    } else if (what == "solution") {
        // a solve report: model and graph are embedded
        grapde::WeightedGraph g = grapde::graph_from_json(in.at("graph").dump());
        std::optional<grapde::DomainSpec> dom;
        if (in.at("model").contains("domain"))
            dom = grapde::io::domain_from_json(g, in.at("model").at("domain"));
        grapde::EnergyModel model = grapde::io::model_from_json(g, dom, in.at("model"));
        grapde::SolveReport srep;
        srep.solution.u = in.at("result").at("u").get<std::vector<double>>();
        srep.solution.v = in.at("result").at("v").get<std::vector<double>>();
        srep.status = grapde::SolveStatus::converged;
        rep = grapde::solution_audit(model, srep, in.value("tolerance", 1e-7));
    } else {
        throw std::invalid_argument("check: --what must be smp, embedding or solution");
    }

    json j;
    j["manifest"] = man.finish();
    json body = grapde::io::check_report_json(rep);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    emit(out, std::move(j));
    return rep.verdict == grapde::Verdict::pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("GRAPDE_THREADS")) {
#ifdef _OPENMP
        int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
#endif
    }

    CLI::App app{"graph elliptic systems: generation, spectra, variational solves, audits"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph");
    std::string g_family = "path", g_out = "graph.json", g_format = "json";
    int g_n = 10, g_a = 0, g_b = 0;
    double g_p = 0.3, g_weight = 1.0;
    std::uint64_t g_seed = 0;
    gen->add_option("--family", g_family, "path|cycle|complete|star|grid|random-connected");
    gen->add_option("--n", g_n, "vertex count (grid: side when --a/--b absent)");
    gen->add_option("--a", g_a, "grid rows");
    gen->add_option("--b", g_b, "grid cols");
    gen->add_option("--p", g_p, "edge probability (random-connected)");
    gen->add_option("--weight", g_weight, "uniform edge weight");
    gen->add_option("--seed", g_seed, "random seed");
    gen->add_option("--out", g_out, "output path");
    gen->add_option("--format", g_format, "json|edgelist");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "first eigenvalue, eigenspace, C*");
    std::string s_graph, s_out;
    int s_m = 1, s_origin = 0;
    double s_q = 2.0;
    std::uint64_t s_seed = 0;
    spec->add_option("--graph", s_graph, "graph file (json or edge list)")->required();
    spec->add_option("--m", s_m, "gradient order for C*");
    spec->add_option("--q", s_q, "Lq exponent for C*");
    spec->add_option("--origin", s_origin, "distance origin O");
    spec->add_option("--seed", s_seed, "random seed");
    spec->add_option("--out", s_out, "output path (stdout when empty)");

    // solve
    auto* sol = app.add_subcommand("solve", "solve one model");
    std::string so_model, so_graph, so_omega, so_out, so_csv, so_method = "auto";
    double so_tol = 1e-8;
    int so_maxit = 100000;
    std::uint64_t so_seed = 0;
    bool so_trace = false, so_unitvol = false;
    sol->add_option("--model", so_model, "model json")->required();
    sol->add_option("--graph", so_graph, "graph file")->required();
    sol->add_option("--omega", so_omega, "domain json {\"omega\": [...]}");
    sol->add_option("--out", so_out, "report path (stdout when empty)");
    sol->add_option("--csv", so_csv, "also write vertex,u,v,residual_u,residual_v");
    sol->add_option("--method", so_method, "auto|direct|mountain");
    sol->add_option("--tol", so_tol, "gradient tolerance");
    sol->add_option("--max-iter", so_maxit, "iteration budget");
    sol->add_option("--seed", so_seed, "random seed");
    sol->add_flag("--trace", so_trace, "include full traces in the report");
    sol->add_flag("--unit-volume", so_unitvol,
                  "rescale weights so Vol(V) = 1 (pointwise Toda reading)");

    // exhaust
    auto* exh = app.add_subcommand("exhaust", "nested-ball Dirichlet Toda solves");
    std::string e_family = "path", e_window, e_out;
    int e_K = 6, e_m = 1, e_n = 1;
    double e_ratio = 32.0, e_phi1 = 1.0, e_phi2 = 1.0, e_tol = 1e-10;
    int e_maxit = 200000;
    std::uint64_t e_seed = 0;
    exh->add_option("--family", e_family, "path|grid");
    exh->add_option("--K", e_K, "max radius");
    exh->add_option("--window", e_window, "comma-separated host vertex ids");
    exh->add_option("--ratio", e_ratio, "weight ratio per unit depth (1 = unit weights)");
    exh->add_option("--phi1", e_phi1, "phi1 > 0");
    exh->add_option("--phi2", e_phi2, "phi2 > 0");
    exh->add_option("--m", e_m, "order m");
    exh->add_option("--n", e_n, "order n");
    exh->add_option("--tol", e_tol, "gradient tolerance");
    exh->add_option("--max-iter", e_maxit, "iteration budget");
    exh->add_option("--seed", e_seed, "random seed");
    exh->add_option("--out", e_out, "report path (stdout when empty)");

    // check
    auto* chk = app.add_subcommand("check", "run a verifier");
    std::string c_what = "smp", c_in, c_graph, c_out;
    std::uint64_t c_seed = 0;
    chk->add_option("--what", c_what, "smp|embedding|solution")->required();
    chk->add_option("--in", c_in, "input json")->required();
    chk->add_option("--graph", c_graph, "graph file (overrides embedded graph)");
    chk->add_option("--seed", c_seed, "random seed");
    chk->add_option("--out", c_out, "report path (stdout when empty)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(g_family, g_n, g_a, g_b, g_p, g_weight, g_seed, g_out,
                                          g_format);
        if (spec->parsed()) {
            Manifest man;
            man.subcommand = "spectrum";
            man.inputs = {{"graph", s_graph}};
            man.config = {{"m", s_m}, {"q", s_q}, {"origin", s_origin}};
            man.seed = s_seed;
            return run_spectrum(s_graph, s_m, s_q, s_origin, s_out, std::move(man));
        }
        if (sol->parsed()) {
            Manifest man;
            man.subcommand = "solve";
            man.inputs = {{"model", so_model}, {"graph", so_graph}, {"omega", so_omega}};
            man.config = {{"method", so_method},
                          {"tol", so_tol},
                          {"max_iter", so_maxit},
                          {"trace", so_trace},
                          {"unit_volume", so_unitvol}};
            man.seed = so_seed;
            return run_solve(so_model, so_graph, so_omega, so_out, so_csv, so_method, so_tol,
                             so_maxit, so_seed, so_trace, so_unitvol, std::move(man));
        }
        if (exh->parsed()) {
            Manifest man;
            man.subcommand = "exhaust";
            man.config = {{"family", e_family}, {"K", e_K},         {"ratio", e_ratio},
                          {"phi1", e_phi1},     {"phi2", e_phi2},   {"m", e_m},
                          {"n", e_n},           {"tol", e_tol},     {"max_iter", e_maxit},
                          {"window", e_window}};
            man.seed = e_seed;
            return run_exhaust(e_family, e_K, e_window, e_ratio, e_phi1, e_phi2, e_m, e_n, e_out,
                               e_tol, e_maxit, e_seed, std::move(man));
        }
        if (chk->parsed()) {
            Manifest man;
            man.subcommand = "check";
            man.inputs = {{"in", c_in}, {"graph", c_graph}};
            man.config = {{"what", c_what}};
            man.seed = c_seed;
            return run_check(c_what, c_in, c_graph, c_out, c_seed, std::move(man));
        }
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        // solver-side outcomes that are verdicts, not usage errors
        if (msg.find("no mountain geometry") != std::string::npos ||
            msg.find("degenerate") != std::string::npos ||
            msg.find("weight incompatible") != std::string::npos)
            return 2;
        return 1;
    }
    return 0;
}
