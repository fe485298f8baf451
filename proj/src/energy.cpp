#include "grapde/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grapde {

namespace {

double pos(double t) { return t > 0.0 ? t : 0.0; }

void require(bool cond, const std::string& inequality) {
    if (!cond) throw std::invalid_argument("model parameter violation: " + inequality);
}

void require_positive_weight(const WeightedGraph& g, const GraphFunction& h, const char* name) {
    check_function(g, h, name);
    for (int x = 0; x < g.n; ++x)
        if (!(h[x] > 0.0))
            throw std::invalid_argument(std::string("model parameter violation: ") + name +
                                        "(x) > 0 fails at vertex " + std::to_string(x));
}

void require_catalog(const PowerNonlinearity& f, const char* name) {
    if (f.c < 0.0)
        throw std::invalid_argument(std::string("catalog violation: ") + name + " coefficient >= 0");
    if (!(f.r > 1.0))
        throw std::invalid_argument(std::string("catalog violation: ") + name + " exponent r > 1");
}

std::span<const char> model_mask(const EnergyModel& mdl) {
    return mdl.domain ? std::span<const char>(mdl.domain->in_omega) : std::span<const char>();
}

// log int_mask e^w dpsi, overflow-safe
double log_integral_exp(const WeightedGraph& g, const GraphFunction& w, std::span<const char> mask) {
    double M = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < g.n; ++x)
        if (mask.empty() || mask[x]) M = std::max(M, w[x]);
    if (!std::isfinite(M)) throw std::runtime_error("log integral over empty vertex set");
    double s = 0.0;
    for (int x = 0; x < g.n; ++x)
        if (mask.empty() || mask[x]) s += g.measure[x] * std::exp(w[x] - M);
    return M + std::log(s);
}

// psi-normalized exponential e^{w - LSE(w)} on the mask, 0 elsewhere
GraphFunction normalized_exp(const WeightedGraph& g, const GraphFunction& w,
                             std::span<const char> mask, double lse) {
    GraphFunction e(g.n, 0.0);
    for (int x = 0; x < g.n; ++x)
        if (mask.empty() || mask[x]) e[x] = std::exp(w[x] - lse);
    return e;
}

double pow_abs_signed(double u, double e) {
    // |u|^e * u with |0|^0 := 1 so that e = 0 reduces to u
    if (e == 0.0) return u;
    return std::pow(std::abs(u), e) * u;
}

} // namespace

double PowerNonlinearity::f(double t) const { return c * std::pow(pos(t), r - 1.0); }
double PowerNonlinearity::F(double t) const { return (c / r) * std::pow(pos(t), r); }

double CoupledPower::F(double u, double v) const {
    double s = 0.0;
    for (const Term& t : terms) s += t.c * std::pow(pos(u), t.a) * std::pow(pos(v), t.b);
    return s;
}

double CoupledPower::Fu(double u, double v) const {
    if (!(u > 0.0)) return 0.0;
    double s = 0.0;
    for (const Term& t : terms)
        if (t.a > 0.0) s += t.c * t.a * std::pow(u, t.a - 1.0) * std::pow(pos(v), t.b);
    return s;
}

double CoupledPower::Fv(double u, double v) const {
    if (!(v > 0.0)) return 0.0;
    double s = 0.0;
    for (const Term& t : terms)
        if (t.b > 0.0) s += t.c * t.b * std::pow(pos(u), t.a) * std::pow(v, t.b - 1.0);
    return s;
}

const char* tag_name(ModelTag t) {
    switch (t) {
    case ModelTag::J1Toda: return "j1_toda";
    case ModelTag::J1Dirichlet: return "j1_dirichlet";
    case ModelTag::J3Dirichlet: return "j3_dirichlet";
    case ModelTag::J4PLap: return "j4_plap";
    case ModelTag::J5Poly: return "j5_poly";
    case ModelTag::J6Global: return "j6_global";
    case ModelTag::J7PLapGlobal: return "j7_plap_global";
    case ModelTag::JvmnPolyGlobal: return "jvmn_poly_global";
    }
    return "?";
}

ModelTag tag_from_name(const std::string& s) {
    for (ModelTag t : {ModelTag::J1Toda, ModelTag::J1Dirichlet, ModelTag::J3Dirichlet,
                       ModelTag::J4PLap, ModelTag::J5Poly, ModelTag::J6Global,
                       ModelTag::J7PLapGlobal, ModelTag::JvmnPolyGlobal})
        if (s == tag_name(t)) return t;
    throw std::invalid_argument("unknown model tag '" + s + "'");
}

EnergyModel make_j1(const WeightedGraph& g, double phi1, double phi2, int m, int n, EigenData eig) {
    require(phi1 > 0.0, "phi1 > 0");
    require(phi2 > 0.0, "phi2 > 0");
    require(m >= 1, "m >= 1");
    require(n >= 1, "n >= 1");
    require(!eig.basis.empty(), "eigenspace nonempty");
    EnergyModel mdl;
    mdl.tag = ModelTag::J1Toda;
    mdl.graph = &g;
    mdl.phi1 = phi1;
    mdl.phi2 = phi2;
    mdl.m = m;
    mdl.n = n;
    mdl.eig = std::make_shared<EigenData>(std::move(eig));
    return mdl;
}

EnergyModel make_j1_dirichlet(const WeightedGraph& g, DomainSpec dom, double phi1, double phi2,
                              int m, int n) {
    require(phi1 > 0.0, "phi1 > 0");
    require(phi2 > 0.0, "phi2 > 0");
    require(m >= 1, "m >= 1");
    require(n >= 1, "n >= 1");
    require(!dom.interior.empty(), "interior of Omega nonempty");
    EnergyModel mdl;
    mdl.tag = ModelTag::J1Dirichlet;
    mdl.graph = &g;
    mdl.phi1 = phi1;
    mdl.phi2 = phi2;
    mdl.m = m;
    mdl.n = n;
    mdl.domain = std::move(dom);
    return mdl;
}

EnergyModel make_j3(const WeightedGraph& g, DomainSpec dom, double p, double q) {
    require(p > 2.0, "p > 2");
    require(q > 2.0, "q > 2");
    require(!dom.interior.empty(), "interior of Omega nonempty");
    EnergyModel mdl;
    mdl.tag = ModelTag::J3Dirichlet;
    mdl.graph = &g;
    mdl.domain = std::move(dom);
    mdl.p = p;
    mdl.q = q;
    return mdl;
}

EnergyModel make_j4(const WeightedGraph& g, DomainSpec dom, double p, double q, double alpha,
                    double beta, double lambda0) {
    require(p >= 2.0, "p >= 2");
    require(q >= 2.0, "q >= 2");
    require(alpha + 1.0 > p, "alpha + 1 > p");
    require(beta + 1.0 > q, "beta + 1 > q");
    require(lambda0 > 0.0, "lambda0 > 0");
    require(!dom.interior.empty(), "interior of Omega nonempty");
    EnergyModel mdl;
    mdl.tag = ModelTag::J4PLap;
    mdl.graph = &g;
    mdl.domain = std::move(dom);
    mdl.p = p;
    mdl.q = q;
    mdl.alpha = alpha;
    mdl.beta = beta;
    mdl.lambda0 = lambda0;
    return mdl;
}

EnergyModel make_j5(const WeightedGraph& g, DomainSpec dom, int m, int n, double p, double q,
                    double alpha, double beta, double lam, double vartheta, GraphFunction weight_u,
                    GraphFunction weight_v, std::optional<double> lam_sup,
                    std::optional<double> vartheta_sup) {
    require(m >= 2, "m >= 2");
    require(n >= 2, "n >= 2");
    require(p >= 2.0, "p >= 2 (p in (1,2) is out of scope)");
    require(q >= 2.0, "q >= 2 (q in (1,2) is out of scope)");
    require(alpha + 1.0 > p, "alpha + 1 > p");
    require(beta + 1.0 > q, "beta + 1 > q");
    require(lam > 0.0, "lambda > 0");
    require(vartheta > 0.0, "vartheta > 0");
    if (lam_sup) require(lam < *lam_sup, "lambda < lambda_1");
    if (vartheta_sup) require(vartheta < *vartheta_sup, "vartheta < vartheta_1");
    require(!dom.interior.empty(), "interior of Omega nonempty");
    check_function(g, weight_u, "weight omega");
    check_function(g, weight_v, "weight sigma");
    EnergyModel mdl;
    mdl.tag = ModelTag::J5Poly;
    mdl.graph = &g;
    mdl.domain = std::move(dom);
    mdl.m = m;
    mdl.n = n;
    mdl.p = p;
    mdl.q = q;
    mdl.alpha = alpha;
    mdl.beta = beta;
    mdl.lam = lam;
    mdl.vartheta = vartheta;
    mdl.lam_sup = lam_sup;
    mdl.vartheta_sup = vartheta_sup;
    mdl.weight_u = std::move(weight_u);
    mdl.weight_v = std::move(weight_v);
    return mdl;
}

EnergyModel make_j6(const WeightedGraph& g, GraphFunction h, PowerNonlinearity f,
                    PowerNonlinearity gn, double theta, double s_growth) {
    require_positive_weight(g, h, "h");
    require_catalog(f, "f");
    require_catalog(gn, "g");
    require(theta > 2.0, "theta > 2");
    require(s_growth > 1.0, "s > 1");
    EnergyModel mdl;
    mdl.tag = ModelTag::J6Global;
    mdl.graph = &g;
    mdl.h = std::move(h);
    mdl.fnl = f;
    mdl.gnl = gn;
    mdl.theta = theta;
    mdl.s_growth = s_growth;
    return mdl;
}

EnergyModel make_j7(const WeightedGraph& g, GraphFunction h, double p, double q, CoupledPower F,
                    double theta1, double theta2) {
    require_positive_weight(g, h, "h");
    require(p >= 2.0, "p >= 2");
    require(q >= 2.0, "q >= 2");
    require(theta1 > 0.0 && theta1 < 1.0 / p, "0 < theta1 < 1/p");
    require(theta2 > 0.0 && theta2 < 1.0 / q, "0 < theta2 < 1/q");
    for (const auto& t : F.terms) {
        require(t.c >= 0.0, "coupled catalog coefficients >= 0");
        require(t.a > 0.0 || t.b > 0.0, "F(x,0,0) = 0 (no constant terms)");
    }
    EnergyModel mdl;
    mdl.tag = ModelTag::J7PLapGlobal;
    mdl.graph = &g;
    mdl.h = std::move(h);
    mdl.p = p;
    mdl.q = q;
    mdl.Fuv = std::move(F);
    mdl.theta1 = theta1;
    mdl.theta2 = theta2;
    return mdl;
}

EnergyModel make_jvmn(const WeightedGraph& g, GraphFunction h, int m, int n, double p, double q,
                      PowerNonlinearity f, PowerNonlinearity gn, double theta0) {
    require_positive_weight(g, h, "h");
    require(m >= 1, "m >= 1");
    require(n >= 1, "n >= 1");
    require(p >= 2.0, "p >= 2");
    require(q >= 2.0, "q >= 2");
    require(theta0 > std::max(p, q), "theta0 > max(p, q)");
    require_catalog(f, "f");
    require_catalog(gn, "g");
    EnergyModel mdl;
    mdl.tag = ModelTag::JvmnPolyGlobal;
    mdl.graph = &g;
    mdl.h = std::move(h);
    mdl.m = m;
    mdl.n = n;
    mdl.p = p;
    mdl.q = q;
    mdl.fnl = f;
    mdl.gnl = gn;
    mdl.theta0 = theta0;
    return mdl;
}

Subspace admissible_space_u(const EnergyModel& mdl) {
    const WeightedGraph& g = *mdl.graph;
    switch (mdl.tag) {
    case ModelTag::J1Toda: return Subspace::span(g, mdl.eig->basis);
    case ModelTag::J1Dirichlet: return constraint_subspace(g, *mdl.domain, mdl.m);
    case ModelTag::J3Dirichlet:
    case ModelTag::J4PLap: return constraint_subspace(g, *mdl.domain, 1);
    case ModelTag::J5Poly: return constraint_subspace(g, *mdl.domain, mdl.m);
    default: return Subspace::full(g);
    }
}

Subspace admissible_space_v(const EnergyModel& mdl) {
    const WeightedGraph& g = *mdl.graph;
    switch (mdl.tag) {
    case ModelTag::J1Toda: return Subspace::span(g, mdl.eig->basis);
    case ModelTag::J1Dirichlet: return constraint_subspace(g, *mdl.domain, mdl.n);
    case ModelTag::J3Dirichlet:
    case ModelTag::J4PLap: return constraint_subspace(g, *mdl.domain, 1);
    case ModelTag::J5Poly: return constraint_subspace(g, *mdl.domain, mdl.n);
    default: return Subspace::full(g);
    }
}

void check_admissible(const EnergyModel& mdl, const FunctionPair& pair) {
    const WeightedGraph& g = *mdl.graph;
    check_function(g, pair.u, "pair.u");
    check_function(g, pair.v, "pair.v");
    switch (mdl.tag) {
    case ModelTag::J1Toda: {
        Subspace sp = Subspace::span(g, mdl.eig->basis);
        double ru = sp.membership_residual(pair.u);
        double rv = sp.membership_residual(pair.v);
        if (ru > mdl.eig_tol || rv > mdl.eig_tol)
            throw std::invalid_argument("pair is outside the lambda1 eigenspace (residual " +
                                        std::to_string(std::max(ru, rv)) + ")");
        break;
    }
    case ModelTag::J1Dirichlet:
    case ModelTag::J3Dirichlet:
    case ModelTag::J4PLap:
    case ModelTag::J5Poly: {
        Subspace su = admissible_space_u(mdl);
        Subspace sv = admissible_space_v(mdl);
        double ru = su.membership_residual(pair.u);
        double rv = sv.membership_residual(pair.v);
        if (ru > 1e-8 || rv > 1e-8)
            throw std::invalid_argument("pair violates the zero-boundary constraints (residual " +
                                        std::to_string(std::max(ru, rv)) + ")");
        break;
    }
    default: break;
    }
}

double energy_value(const EnergyModel& mdl, const FunctionPair& pair) {
    const WeightedGraph& g = *mdl.graph;
    check_admissible(mdl, pair);
    const GraphFunction& u = pair.u;
    const GraphFunction& v = pair.v;
    auto mask = model_mask(mdl);
    auto int_mask = [&](const GraphFunction& w) {
        return mask.empty() ? integral(g, w) : integral_masked(g, w, mask);
    };
    auto sobolev_term = [&](const GraphFunction& f, int order, double expo) {
        GraphFunction t = m_grad_norm(g, f, order);
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x) w[x] = std::pow(t[x], expo);
        return int_mask(w);
    };

    switch (mdl.tag) {
    case ModelTag::J1Toda:
    case ModelTag::J1Dirichlet: {
        GraphFunction w1(g.n), w2(g.n);
        for (int x = 0; x < g.n; ++x) {
            w1[x] = 2.0 * u[x] - v[x];
            w2[x] = -u[x] + 2.0 * v[x];
        }
        double quad = 0.5 * sobolev_term(u, mdl.m, 2.0) + 0.5 * sobolev_term(v, mdl.n, 2.0);
        return quad - 0.5 * mdl.phi1 * log_integral_exp(g, w1, mask) -
               0.5 * mdl.phi2 * log_integral_exp(g, w2, mask);
    }
    case ModelTag::J3Dirichlet: {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = std::pow(std::abs(u[x]), mdl.p) * std::pow(std::abs(v[x]), mdl.q);
        return 0.5 * (sobolev_term(u, 1, 2.0) + sobolev_term(v, 1, 2.0)) -
               int_mask(w) / (mdl.p + mdl.q);
    }
    case ModelTag::J4PLap: {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = std::pow(std::abs(u[x]), mdl.alpha + 1.0) * std::pow(std::abs(v[x]), mdl.beta + 1.0);
        return (mdl.alpha + 1.0) / mdl.p * sobolev_term(u, 1, mdl.p) +
               (mdl.beta + 1.0) / mdl.q * sobolev_term(v, 1, mdl.q) - mdl.lambda0 * int_mask(w);
    }
    case ModelTag::J5Poly: {
        GraphFunction wu(g.n), wv(g.n), wc(g.n);
        for (int x = 0; x < g.n; ++x) {
            wu[x] = mdl.weight_u[x] * std::pow(std::abs(u[x]), mdl.p);
            wv[x] = mdl.weight_v[x] * std::pow(std::abs(v[x]), mdl.q);
            wc[x] = std::pow(std::abs(u[x]), mdl.alpha + 1.0) * std::pow(std::abs(v[x]), mdl.beta + 1.0);
        }
        return sobolev_term(u, mdl.m, mdl.p) / mdl.p + sobolev_term(v, mdl.n, mdl.q) / mdl.q -
               mdl.lam / mdl.p * int_mask(wu) - mdl.vartheta / mdl.q * int_mask(wv) -
               int_mask(wc) / (mdl.alpha + mdl.beta + 2.0);
    }
    case ModelTag::J6Global: {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = mdl.h[x] * (u[x] * u[x] + v[x] * v[x]) * 0.5 - mdl.fnl.F(u[x]) - mdl.gnl.F(v[x]);
        return 0.5 * (sobolev_term(u, 1, 2.0) + sobolev_term(v, 1, 2.0)) + integral(g, w);
    }
    case ModelTag::J7PLapGlobal: {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = mdl.h[x] * (std::pow(std::abs(u[x]), mdl.p) / mdl.p +
                               std::pow(std::abs(v[x]), mdl.q) / mdl.q) -
                   mdl.Fuv.F(u[x], v[x]);
        return sobolev_term(u, 1, mdl.p) / mdl.p + sobolev_term(v, 1, mdl.q) / mdl.q +
               integral(g, w);
    }
    case ModelTag::JvmnPolyGlobal: {
        GraphFunction w(g.n);
        for (int x = 0; x < g.n; ++x)
            w[x] = mdl.h[x] * (std::pow(std::abs(u[x]), mdl.p) / mdl.p +
                               std::pow(std::abs(v[x]), mdl.q) / mdl.q) -
                   mdl.fnl.F(u[x]) - mdl.gnl.F(v[x]);
        return sobolev_term(u, mdl.m, mdl.p) / mdl.p + sobolev_term(v, mdl.n, mdl.q) / mdl.q +
               integral(g, w);
    }
    }
    throw std::logic_error("energy_value: unhandled tag");
}

FunctionPair energy_gradient(const EnergyModel& mdl, const FunctionPair& pair) {
    const WeightedGraph& g = *mdl.graph;
    check_admissible(mdl, pair);
    const GraphFunction& u = pair.u;
    const GraphFunction& v = pair.v;
    auto mask = model_mask(mdl);
    auto on_set = [&](int x) { return mask.empty() || mask[x]; };

    FunctionPair grad;
    switch (mdl.tag) {
    case ModelTag::J1Toda:
    case ModelTag::J1Dirichlet: {
        GraphFunction w1(g.n), w2(g.n);
        for (int x = 0; x < g.n; ++x) {
            w1[x] = 2.0 * u[x] - v[x];
            w2[x] = -u[x] + 2.0 * v[x];
        }
        double lse1 = log_integral_exp(g, w1, mask);
        double lse2 = log_integral_exp(g, w2, mask);
        GraphFunction e1 = normalized_exp(g, w1, mask, lse1);
        GraphFunction e2 = normalized_exp(g, w2, mask, lse2);
        grad.u = poly_energy_gradient(g, u, mdl.m, 2.0, mask);
        grad.v = poly_energy_gradient(g, v, mdl.n, 2.0, mask);
        for (int x = 0; x < g.n; ++x) {
            grad.u[x] += -mdl.phi1 * e1[x] + 0.5 * mdl.phi2 * e2[x];
            grad.v[x] += 0.5 * mdl.phi1 * e1[x] - mdl.phi2 * e2[x];
        }
        return grad;
    }
    case ModelTag::J3Dirichlet: {
        grad.u = poly_energy_gradient(g, u, 1, 2.0, mask);
        grad.v = poly_energy_gradient(g, v, 1, 2.0, mask);
        double cp = mdl.p / (mdl.p + mdl.q), cq = mdl.q / (mdl.p + mdl.q);
        for (int x = 0; x < g.n; ++x) {
            if (!on_set(x)) continue;
            grad.u[x] -= cp * pow_abs_signed(u[x], mdl.p - 2.0) * std::pow(std::abs(v[x]), mdl.q);
            grad.v[x] -= cq * std::pow(std::abs(u[x]), mdl.p) * pow_abs_signed(v[x], mdl.q - 2.0);
        }
        return grad;
    }
    case ModelTag::J4PLap: {
        grad.u = poly_energy_gradient(g, u, 1, mdl.p, mask);
        grad.v = poly_energy_gradient(g, v, 1, mdl.q, mask);
        for (int x = 0; x < g.n; ++x) {
            grad.u[x] *= mdl.alpha + 1.0;
            grad.v[x] *= mdl.beta + 1.0;
            if (!on_set(x)) continue;
            grad.u[x] -= mdl.lambda0 * (mdl.alpha + 1.0) * pow_abs_signed(u[x], mdl.alpha - 1.0) *
                         std::pow(std::abs(v[x]), mdl.beta + 1.0);
            grad.v[x] -= mdl.lambda0 * (mdl.beta + 1.0) * std::pow(std::abs(u[x]), mdl.alpha + 1.0) *
                         pow_abs_signed(v[x], mdl.beta - 1.0);
        }
        return grad;
    }
    case ModelTag::J5Poly: {
        grad.u = poly_energy_gradient(g, u, mdl.m, mdl.p, mask);
        grad.v = poly_energy_gradient(g, v, mdl.n, mdl.q, mask);
        double cc = 1.0 / (mdl.alpha + mdl.beta + 2.0);
        for (int x = 0; x < g.n; ++x) {
            if (!on_set(x)) continue;
            grad.u[x] -= mdl.lam * mdl.weight_u[x] * pow_abs_signed(u[x], mdl.p - 2.0) +
                         cc * (mdl.alpha + 1.0) * pow_abs_signed(u[x], mdl.alpha - 1.0) *
                             std::pow(std::abs(v[x]), mdl.beta + 1.0);
            grad.v[x] -= mdl.vartheta * mdl.weight_v[x] * pow_abs_signed(v[x], mdl.q - 2.0) +
                         cc * (mdl.beta + 1.0) * std::pow(std::abs(u[x]), mdl.alpha + 1.0) *
                             pow_abs_signed(v[x], mdl.beta - 1.0);
        }
        return grad;
    }
    case ModelTag::J6Global: {
        grad.u = poly_energy_gradient(g, u, 1, 2.0);
        grad.v = poly_energy_gradient(g, v, 1, 2.0);
        for (int x = 0; x < g.n; ++x) {
            grad.u[x] += mdl.h[x] * u[x] - mdl.fnl.f(u[x]);
            grad.v[x] += mdl.h[x] * v[x] - mdl.gnl.f(v[x]);
        }
        return grad;
    }
    case ModelTag::J7PLapGlobal: {
        grad.u = poly_energy_gradient(g, u, 1, mdl.p);
        grad.v = poly_energy_gradient(g, v, 1, mdl.q);
        for (int x = 0; x < g.n; ++x) {
            grad.u[x] += mdl.h[x] * pow_abs_signed(u[x], mdl.p - 2.0) - mdl.Fuv.Fu(u[x], v[x]);
            grad.v[x] += mdl.h[x] * pow_abs_signed(v[x], mdl.q - 2.0) - mdl.Fuv.Fv(u[x], v[x]);
        }
        return grad;
    }
    case ModelTag::JvmnPolyGlobal: {
        grad.u = poly_energy_gradient(g, u, mdl.m, mdl.p);
        grad.v = poly_energy_gradient(g, v, mdl.n, mdl.q);
        for (int x = 0; x < g.n; ++x) {
            grad.u[x] += mdl.h[x] * pow_abs_signed(u[x], mdl.p - 2.0) - mdl.fnl.f(u[x]);
            grad.v[x] += mdl.h[x] * pow_abs_signed(v[x], mdl.q - 2.0) - mdl.gnl.f(v[x]);
        }
        return grad;
    }
    }
    throw std::logic_error("energy_gradient: unhandled tag");
}

bool HypothesisReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

void check_single_power(HypothesisReport& rep, const PowerNonlinearity& f, const char* who,
                        double s_growth, bool ar_theta_fixed, double theta0) {
    const std::string w(who);
    // (H1) continuity, f(x,0) = 0, f >= 0 on t >= 0
    {
        bool ok = f.c >= 0.0 && f.r > 1.0;
        rep.checks.push_back({w + " (H1) f(x,0)=0 and f>=0 on [0,inf)", ok,
                              ok ? "catalog power" : "needs c >= 0 and r > 1", {}});
    }
    // (H2) f = o(|t|^s) at infinity  <=>  r - 1 < s
    {
        bool ok = f.c == 0.0 || f.r - 1.0 < s_growth;
        rep.checks.push_back({w + " (H2) f = o(|t|^s) at infinity", ok,
                              "r-1 = " + std::to_string(f.r - 1.0) + " vs s = " + std::to_string(s_growth),
                              ok ? std::optional<double>{} : std::optional<double>{1e6}});
    }
    // (H3) f = o(|t|) at 0  <=>  r > 2
    {
        bool ok = f.c == 0.0 || f.r > 2.0;
        double t0 = 1e-3;
        rep.checks.push_back({w + " (H3) f = o(|t|) at 0", ok,
                              "f(t)/t = c t^{r-2} near 0",
                              ok ? std::optional<double>{} : std::optional<double>{t0}});
    }
    // (H4)/(H3') Ambrosetti-Rabinowitz: theta F(t) < f(t) t beyond s0
    {
        double theta = ar_theta_fixed ? theta0 : (f.r + 2.0) / 2.0;
        bool ok = f.c > 0.0 && theta < f.r && (ar_theta_fixed ? true : theta > 2.0);
        std::optional<double> witness;
        double s0 = 1.0;
        if (ok) {
            for (int j = 1; j <= 64 && ok; ++j) {
                double t = 10.0 * s0 * j / 64.0;
                if (t <= s0) continue;
                if (!(theta * f.F(t) < f.f(t) * t)) {
                    ok = false;
                    witness = t;
                }
            }
        }
        std::string note = f.c == 0.0 ? "fails positivity: f == 0"
                                      : "theta = " + std::to_string(theta) + ", s0 = 1";
        rep.checks.push_back({w + (ar_theta_fixed ? " (H3) 0 < theta0 F < f t beyond s0"
                                                  : " (H4) theta F < f t beyond s0"),
                              ok, note, witness});
    }
}

} // namespace

HypothesisReport validate_hypotheses(const EnergyModel& mdl, std::optional<double> lambda_mp,
                                     std::optional<double> lambda_nq) {
    HypothesisReport rep;
    switch (mdl.tag) {
    case ModelTag::J6Global: {
        rep.battery = "semilinear-global";
        check_single_power(rep, mdl.fnl, "f", mdl.s_growth, false, 0.0);
        check_single_power(rep, mdl.gnl, "g", mdl.s_growth, false, 0.0);
        break;
    }
    case ModelTag::J7PLapGlobal: {
        rep.battery = "coupled-plaplacian-global";
        bool h1 = true;
        for (const auto& t : mdl.Fuv.terms)
            if (t.c < 0.0 || (t.a == 0.0 && t.b == 0.0)) h1 = false;
        // f(x,0,0) = Fu(0,0) must vanish: terms with a == 1, b == 0 give a constant
        for (const auto& t : mdl.Fuv.terms)
            if (t.c > 0.0 && ((t.a == 1.0 && t.b == 0.0) || (t.b == 1.0 && t.a == 0.0))) h1 = false;
        rep.checks.push_back({"(H1) F(x,0,0)=f=g=0, f,g >= 0 on the positive cone", h1,
                              "coupled power catalog", {}});

        double maxdeg = 0.0;
        for (const auto& t : mdl.Fuv.terms) maxdeg = std::max(maxdeg, t.a + t.b);
        double r_pick = std::max(maxdeg, mdl.p + 1.0), s_pick = std::max(maxdeg, mdl.q + 1.0);
        rep.checks.push_back({"(H2) F <= C(1 + |u|^r + |v|^s), r > p, s > q", true,
                              "polynomial growth, r = " + std::to_string(r_pick) +
                                  ", s = " + std::to_string(s_pick), {}});
        rep.checks.push_back({"(H3) local bound near 0", true,
                              "literal reading holds with the constant-1 slack", {}});

        bool h4 = !mdl.Fuv.terms.empty();
        double minval = std::numeric_limits<double>::infinity();
        bool any_pos = false;
        for (const auto& t : mdl.Fuv.terms) {
            if (t.c <= 0.0) continue;
            any_pos = true;
            minval = std::min(minval, t.a / mdl.p + t.b / mdl.q);
        }
        h4 = h4 && any_pos && minval > 1.0;
        std::optional<double> witness;
        if (h4) {
            double th1 = 1.0 / (mdl.p * minval), th2 = 1.0 / (mdl.q * minval);
            double R = 1.0;
            for (int j = 0; j < 32 && h4; ++j) {
                double uu = R * (1.0 + j / 8.0), vv = R * (1.0 + ((j * 7) % 32) / 8.0);
                double F = mdl.Fuv.F(uu, vv);
                double rhs = th1 * uu * mdl.Fuv.Fu(uu, vv) + th2 * vv * mdl.Fuv.Fv(uu, vv);
                if (!(F > 0.0) || !(F <= rhs)) {
                    h4 = false;
                    witness = uu;
                }
            }
        }
        rep.checks.push_back({"(H4) 0 < F <= theta1 u f + theta2 v g for large u,v", h4,
                              any_pos ? "min_k (a/p + b/q) = " + std::to_string(minval)
                                      : "fails positivity: F == 0",
                              witness});
        break;
    }
    case ModelTag::JvmnPolyGlobal: {
        rep.battery = "poly-global";
        auto h2_check = [&](const PowerNonlinearity& f, const char* who,
                            std::optional<double> lam) {
            bool ok;
            std::string note;
            if (f.c == 0.0 || f.r > 2.0) {
                ok = true;
                note = "limsup |f(x,t)|/t at 0 is 0";
            } else if (f.r == 2.0) {
                ok = lam.has_value() && f.c < *lam;
                note = lam ? "limit c = " + std::to_string(f.c) + " vs lambda = " +
                                 std::to_string(*lam)
                           : "limit c needs lambda_{mp(V)} to compare";
            } else {
                ok = false;
                note = "limsup is infinite for r < 2";
            }
            rep.checks.push_back({std::string(who) + " (H2) limsup |f|/t at 0 below lambda", ok,
                                  note, ok ? std::optional<double>{} : std::optional<double>{1e-6}});
        };
        h2_check(mdl.fnl, "f", lambda_mp);
        h2_check(mdl.gnl, "g", lambda_nq);
        rep.notes.push_back("(H2) compares |f(x,t)|/t although the equation is p-homogeneous; "
                            "checked as written, |t|^{p-1} scaling mismatch left uninterpreted");
        check_single_power(rep, mdl.fnl, "f", std::numeric_limits<double>::infinity(), true,
                           mdl.theta0);
        check_single_power(rep, mdl.gnl, "g", std::numeric_limits<double>::infinity(), true,
                           mdl.theta0);
        // drop the (H2)/(H3)-at-zero rows that T23 does not state
        std::vector<HypothesisCheck> kept;
        for (auto& c : rep.checks) {
            if (c.name.find("(H2) f = o") != std::string::npos ||
                c.name.find("(H3) f = o") != std::string::npos ||
                c.name.find("(H2) g = o") != std::string::npos)
                continue;
            if (c.name.find("o(|t|^s) at infinity") != std::string::npos ||
                c.name.find("o(|t|) at 0") != std::string::npos)
                continue;
            kept.push_back(std::move(c));
        }
        rep.checks = std::move(kept);
        rep.notes.push_back("(H3) writes 0 < theta0 G(x,s) < G(x,s)s; checked in the g-version "
                            "(g(x,s)s), discrepancy recorded");
        break;
    }
    default:
        rep.battery = "parameter-only";
        rep.checks.push_back({"construction inequalities", true,
                              "validated when the model was built", {}});
        break;
    }
    return rep;
}

} // namespace grapde
