#include "grapde/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grapde::io {

namespace {

GraphFunction vertex_field(const WeightedGraph& g, const nlohmann::json& j, const char* name,
                           double fallback) {
    if (!j.contains(name)) return GraphFunction(g.n, fallback);
    const auto& f = j.at(name);
    if (f.is_number()) return GraphFunction(g.n, f.get<double>());
    if (!f.is_array() || static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument(std::string("model json: '") + name +
                                    "' must be a number or an array of length n");
    GraphFunction out(g.n);
    for (int x = 0; x < g.n; ++x) out[x] = f[x].get<double>();
    return out;
}

PowerNonlinearity power_from(const nlohmann::json& j, const char* name) {
    PowerNonlinearity f;
    if (j.contains(name)) {
        f.c = j.at(name).value("c", 1.0);
        f.r = j.at(name).value("r", 3.0);
    }
    return f;
}

json function_array(const GraphFunction& u) {
    json a = json::array();
    for (double v : u) a.push_back(v);
    return a;
}

} // namespace

json graph_json(const WeightedGraph& g) {
    json j;
    j["vertices"] = g.n;
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.i, e.j, e.w});
    j["edges"] = std::move(edges);
    return j;
}

json domain_json(const DomainSpec& d) {
    json j;
    j["omega"] = d.omega;
    j["boundary"] = d.boundary;
    j["interior"] = d.interior;
    return j;
}

DomainSpec domain_from_json(const WeightedGraph& g, const nlohmann::json& j) {
    if (!j.contains("omega")) throw std::invalid_argument("domain json: need field 'omega'");
    std::vector<int> omega;
    for (const auto& v : j.at("omega")) omega.push_back(v.get<int>());
    return make_domain(g, std::move(omega));
}

EnergyModel model_from_json(const WeightedGraph& g, std::optional<DomainSpec> domain,
                            const nlohmann::json& j) {
    if (!j.contains("tag")) throw std::invalid_argument("model json: need field 'tag'");
    ModelTag tag = tag_from_name(j.at("tag").get<std::string>());
    nlohmann::json params = j.value("params", nlohmann::json::object());
    nlohmann::json nl = j.value("nonlinearity", nlohmann::json::object());
    auto need_domain = [&]() -> DomainSpec {
        if (!domain)
            throw std::invalid_argument("model json: tag '" + std::string(tag_name(tag)) +
                                        "' needs a domain (--omega)");
        return *domain;
    };

    switch (tag) {
    case ModelTag::J1Toda: {
        EigenData eig = first_eigenvalue(g);
        return make_j1(g, params.value("phi1", 1.0), params.value("phi2", 1.0),
                       params.value("m", 1), params.value("n", 1), std::move(eig));
    }
    case ModelTag::J1Dirichlet:
        return make_j1_dirichlet(g, need_domain(), params.value("phi1", 1.0),
                                 params.value("phi2", 1.0), params.value("m", 1),
                                 params.value("n", 1));
    case ModelTag::J3Dirichlet:
        return make_j3(g, need_domain(), params.value("p", 3.0), params.value("q", 3.0));
    case ModelTag::J4PLap:
        return make_j4(g, need_domain(), params.value("p", 2.0), params.value("q", 2.0),
                       params.value("alpha", 2.0), params.value("beta", 2.0),
                       params.value("lambda0", 1.0));
    case ModelTag::J5Poly: {
        DomainSpec dom = need_domain();
        int m = params.value("m", 2), n = params.value("n", 2);
        double p = params.value("p", 2.0), q = params.value("q", 2.0);
        GraphFunction wu = vertex_field(g, params, "omega_weight", 1.0);
        GraphFunction wv = vertex_field(g, params, "sigma_weight", 1.0);
        double lam, vth;
        std::optional<double> lam_sup, vth_sup;
        if (params.contains("lambda") && params.contains("vartheta")) {
            lam = params.at("lambda").get<double>();
            vth = params.at("vartheta").get<double>();
        } else {
            RayleighOptions ropts;
            RayleighResult l1 = weighted_rayleigh_inf(g, dom, m, p, wu, {}, ropts);
            RayleighResult t1 = weighted_rayleigh_inf(g, dom, n, q, wv, {}, ropts);
            double fl = params.value("lambda_frac", 0.5), fv = params.value("vartheta_frac", 0.5);
            lam = fl * l1.value;
            vth = fv * t1.value;
            lam_sup = l1.value;
            vth_sup = t1.value;
        }
        return make_j5(g, std::move(dom), m, n, p, q, params.value("alpha", 2.0),
                       params.value("beta", 2.0), lam, vth, std::move(wu), std::move(wv), lam_sup,
                       vth_sup);
    }
    case ModelTag::J6Global:
        return make_j6(g, vertex_field(g, params, "h", 1.0),
                       nl.contains("f") ? power_from(nl, "f") : PowerNonlinearity{1.0, 3.0},
                       nl.contains("g") ? power_from(nl, "g") : PowerNonlinearity{1.0, 3.0},
                       params.value("theta", 2.5), params.value("s", 3.0));
    case ModelTag::J7PLapGlobal: {
        CoupledPower F;
        if (nl.contains("terms")) {
            for (const auto& t : nl.at("terms"))
                F.terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
        } else {
            F.terms = {{1.0, 3.0, 0.0}, {1.0, 0.0, 3.0}, {1.0, 2.0, 2.0}};
        }
        return make_j7(g, vertex_field(g, params, "h", 1.0), params.value("p", 2.0),
                       params.value("q", 2.0), std::move(F), params.value("theta1", 0.25),
                       params.value("theta2", 0.25));
    }
    case ModelTag::JvmnPolyGlobal:
        return make_jvmn(g, vertex_field(g, params, "h", 1.0), params.value("m", 2),
                         params.value("n", 2), params.value("p", 2.0), params.value("q", 2.0),
                         nl.contains("f") ? power_from(nl, "f") : PowerNonlinearity{1.0, 4.0},
                         nl.contains("g") ? power_from(nl, "g") : PowerNonlinearity{1.0, 4.0},
                         params.value("theta0", 3.0));
    }
    throw std::logic_error("model_from_json: unhandled tag");
}

json model_json(const EnergyModel& m) {
    json j;
    j["tag"] = tag_name(m.tag);
    json p;
    switch (m.tag) {
    case ModelTag::J1Toda:
        p = {{"phi1", m.phi1}, {"phi2", m.phi2}, {"m", m.m}, {"n", m.n}};
        j["lambda1"] = m.eig->lambda1;
        break;
    case ModelTag::J1Dirichlet:
        p = {{"phi1", m.phi1}, {"phi2", m.phi2}, {"m", m.m}, {"n", m.n}};
        break;
    case ModelTag::J3Dirichlet: p = {{"p", m.p}, {"q", m.q}}; break;
    case ModelTag::J4PLap:
        p = {{"p", m.p}, {"q", m.q}, {"alpha", m.alpha}, {"beta", m.beta}, {"lambda0", m.lambda0}};
        break;
    case ModelTag::J5Poly:
        p = {{"m", m.m},         {"n", m.n},       {"p", m.p},
             {"q", m.q},         {"alpha", m.alpha}, {"beta", m.beta},
             {"lambda", m.lam},  {"vartheta", m.vartheta}};
        if (m.lam_sup) p["lambda_1"] = *m.lam_sup;
        if (m.vartheta_sup) p["vartheta_1"] = *m.vartheta_sup;
        p["omega_weight"] = function_array(m.weight_u);
        p["sigma_weight"] = function_array(m.weight_v);
        break;
    case ModelTag::J6Global:
        p = {{"theta", m.theta}, {"s", m.s_growth}};
        p["h"] = function_array(m.h);
        j["nonlinearity"] = {{"f", {{"c", m.fnl.c}, {"r", m.fnl.r}}},
                             {"g", {{"c", m.gnl.c}, {"r", m.gnl.r}}}};
        break;
    case ModelTag::J7PLapGlobal: {
        p = {{"p", m.p}, {"q", m.q}, {"theta1", m.theta1}, {"theta2", m.theta2}};
        p["h"] = function_array(m.h);
        json terms = json::array();
        for (const auto& t : m.Fuv.terms) terms.push_back({t.c, t.a, t.b});
        j["nonlinearity"] = {{"terms", std::move(terms)}};
        break;
    }
    case ModelTag::JvmnPolyGlobal:
        p = {{"m", m.m}, {"n", m.n}, {"p", m.p}, {"q", m.q}, {"theta0", m.theta0}};
        p["h"] = function_array(m.h);
        j["nonlinearity"] = {{"f", {{"c", m.fnl.c}, {"r", m.fnl.r}}},
                             {"g", {{"c", m.gnl.c}, {"r", m.gnl.r}}}};
        break;
    }
    j["params"] = std::move(p);
    if (m.domain) j["domain"] = domain_json(*m.domain);
    return j;
}

json solve_report_json(const EnergyModel& model, const SolveReport& rep, bool with_trace) {
    json j;
    j["model"] = model_json(model);
    j["graph"] = graph_json(*model.graph);
    json r;
    r["status"] = status_name(rep.status);
    r["critical_value"] = rep.critical_value;
    r["energy_at_zero"] = rep.energy_at_zero;
    r["final_grad_norm"] = rep.final_grad_norm;
    r["el_residual_max"] = rep.el_residual_max;
    r["solution_norm"] = rep.solution_norm;
    r["mountain_radius_estimate"] = rep.mountain_radius_estimate;
    r["literal_system_residual_max"] = rep.literal_system_residual_max;
    r["iterations"] = rep.iterations;
    r["positivity"] = {{"u", rep.u_positive}, {"v", rep.v_positive}};
    r["u"] = function_array(rep.solution.u);
    r["v"] = function_array(rep.solution.v);
    r["el_residual_u"] = function_array(rep.el_residual_u);
    r["el_residual_v"] = function_array(rep.el_residual_v);
    if (!rep.note.empty()) r["note"] = rep.note;
    j["result"] = std::move(r);
    if (with_trace) {
        j["traces"] = {{"energy", rep.energy_trace}, {"grad_norm", rep.grad_norm_trace}};
    }
    return j;
}

json hypothesis_report_json(const HypothesisReport& rep) {
    json j;
    j["battery"] = rep.battery;
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json row;
        row["name"] = c.name;
        row["pass"] = c.pass;
        row["note"] = c.note;
        if (c.witness) row["witness"] = *c.witness;
        checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);
    j["notes"] = rep.notes;
    j["all_pass"] = rep.all_pass();
    return j;
}

json check_report_json(const CheckReport& rep) {
    json j;
    j["check"] = rep.check;
    j["verdict"] = verdict_name(rep.verdict);
    j["witness_vertices"] = rep.witness_vertices;
    j["witness_values"] = rep.witness_values;
    j["detail"] = rep.detail;
    j["tolerance"] = rep.tolerance;
    j["max_ratio"] = rep.max_ratio;
    j["samples"] = rep.samples;
    j["violations"] = rep.violations;
    return j;
}

json exhaustion_report_json(const ExhaustFamily& fam, const ExhaustionReport& rep) {
    json j;
    j["family"] = fam.name;
    j["center"] = fam.center;
    j["declared_omega0"] = fam.declared_omega0;
    j["graph"] = graph_json(fam.host);
    j["ball_sizes"] = rep.ball_sizes;
    j["energies"] = rep.energies;
    j["el_residuals"] = rep.el_residuals;
    j["window_diffs"] = rep.window_diffs;
    j["statuses"] = rep.statuses;
    j["final_window_diff"] = rep.final_window_diff;
    j["u"] = function_array(rep.final_solution.u);
    j["v"] = function_array(rep.final_solution.v);
    return j;
}

std::string pair_csv(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v,
                     const GraphFunction& ru, const GraphFunction& rv) {
    std::string out = "vertex,u,v,residual_u,residual_v\n";
    char buf[256];
    for (int x = 0; x < g.n; ++x) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", x, u[x], v[x],
                      x < static_cast<int>(ru.size()) ? ru[x] : 0.0,
                      x < static_cast<int>(rv.size()) ? rv[x] : 0.0);
        out += buf;
    }
    return out;
}

namespace {

bool type_matches(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

bool validate_at(const nlohmann::json& doc, const nlohmann::json& schema, std::string path,
                 std::string& error) {
    if (schema.contains("type")) {
        std::string t = schema.at("type").get<std::string>();
        if (!type_matches(doc, t)) {
            error = path + ": expected " + t;
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& cand : schema.at("enum"))
            if (doc == cand) ok = true;
        if (!ok) {
            error = path + ": value not in enum";
            return false;
        }
    }
    if (schema.contains("required")) {
        for (const auto& name : schema.at("required")) {
            if (!doc.is_object() || !doc.contains(name.get<std::string>())) {
                error = path + ": missing required field '" + name.get<std::string>() + "'";
                return false;
            }
        }
    }
    if (schema.contains("properties") && doc.is_object()) {
        for (const auto& [name, sub] : schema.at("properties").items()) {
            if (!doc.contains(name)) continue;
            if (!validate_at(doc.at(name), sub, path + "/" + name, error)) return false;
        }
    }
    if (schema.contains("items") && doc.is_array()) {
        const auto& sub = schema.at("items");
        for (std::size_t i = 0; i < doc.size(); ++i)
            if (!validate_at(doc[i], sub, path + "/" + std::to_string(i), error)) return false;
    }
    return true;
}

} // namespace

bool validate_schema(const nlohmann::json& doc, const nlohmann::json& schema, std::string& error) {
    return validate_at(doc, schema, "", error);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace grapde::io
