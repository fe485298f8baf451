#pragma once

#include "grapde/calculus.hpp"
#include "grapde/graph.hpp"
#include "grapde/spectral.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grapde {

// Catalog nonlinearities. Powers act on the positive part, so f(0) = 0 and
// f >= 0 on [0, inf) hold by construction; coefficients must be >= 0.
struct PowerNonlinearity {
    double c = 1.0;
    double r = 3.0; // f(t) = c (t+)^{r-1}, F(t) = (c/r) (t+)^r

    double f(double t) const;
    double F(double t) const;
};

struct CoupledPower {
    struct Term {
        double c = 1.0, a = 3.0, b = 0.0; // c (u+)^a (v+)^b
    };
    std::vector<Term> terms;

    double F(double u, double v) const;
    double Fu(double u, double v) const; // dF/du for u > 0, else 0
    double Fv(double u, double v) const;
};

enum class ModelTag { J1Toda, J1Dirichlet, J3Dirichlet, J4PLap, J5Poly, J6Global, J7PLapGlobal, JvmnPolyGlobal };

const char* tag_name(ModelTag t);
ModelTag tag_from_name(const std::string& s);

struct FunctionPair {
    GraphFunction u, v;
};

// One of the variational functionals with every exponent/weight validated at
// construction (violations throw naming the inequality). Build through the
// make_* factories.
struct EnergyModel {
    ModelTag tag = ModelTag::J3Dirichlet;
    const WeightedGraph* graph = nullptr;

    double phi1 = 1.0, phi2 = 1.0;          // J1 family
    int m = 1, n = 1;
    std::shared_ptr<EigenData> eig;         // J1Toda eigenspace
    double eig_tol = 1e-8;

    std::optional<DomainSpec> domain;       // Dirichlet models
    double p = 2.0, q = 2.0;
    double alpha = 2.0, beta = 2.0;
    double lambda0 = 1.0;                   // J4
    double lam = 0.0, vartheta = 0.0;       // J5 eigenvalue parameters
    std::optional<double> lam_sup, vartheta_sup; // J5: computed lambda_1 / vartheta_1 when known
    GraphFunction h;                        // positive zero-order weight
    GraphFunction weight_u, weight_v;       // J5 omega(x), sigma(x) (may change sign)
    PowerNonlinearity fnl, gnl;             // J6 / Jvmn
    CoupledPower Fuv;                       // J7
    double theta = 2.5, s_growth = 3.0;     // J6 (H4)/(H2) parameters
    double theta1 = 0.25, theta2 = 0.25;    // J7 (H4)
    double theta0 = 3.0;                    // Jvmn (H3)
};

EnergyModel make_j1(const WeightedGraph& g, double phi1, double phi2, int m, int n,
                    EigenData eig);
// the exhaustion functional: J1 with Omega-restricted integrals and zero
// boundary data
EnergyModel make_j1_dirichlet(const WeightedGraph& g, DomainSpec dom, double phi1, double phi2,
                              int m, int n);
EnergyModel make_j3(const WeightedGraph& g, DomainSpec dom, double p, double q);
EnergyModel make_j4(const WeightedGraph& g, DomainSpec dom, double p, double q, double alpha,
                    double beta, double lambda0);
EnergyModel make_j5(const WeightedGraph& g, DomainSpec dom, int m, int n, double p, double q,
                    double alpha, double beta, double lam, double vartheta,
                    GraphFunction weight_u, GraphFunction weight_v,
                    std::optional<double> lam_sup = {}, std::optional<double> vartheta_sup = {});
EnergyModel make_j6(const WeightedGraph& g, GraphFunction h, PowerNonlinearity f,
                    PowerNonlinearity gn, double theta, double s_growth);
EnergyModel make_j7(const WeightedGraph& g, GraphFunction h, double p, double q, CoupledPower F,
                    double theta1, double theta2);
EnergyModel make_jvmn(const WeightedGraph& g, GraphFunction h, int m, int n, double p, double q,
                      PowerNonlinearity f, PowerNonlinearity gn, double theta0);

// Admissible linear space for each component of the pair.
Subspace admissible_space_u(const EnergyModel& model);
Subspace admissible_space_v(const EnergyModel& model);

// Throws when the pair is outside the model's admissible set (dimension,
// finiteness, eigenspace/zero-boundary membership beyond tolerance).
void check_admissible(const EnergyModel& model, const FunctionPair& pair);

double energy_value(const EnergyModel& model, const FunctionPair& pair);

// L2(psi) representation of the differential: d/dt J(pair + t(phi,0))|0 =
// int G_u phi dpsi, and likewise for v. Callers project onto the admissible
// subspace for constrained models.
FunctionPair energy_gradient(const EnergyModel& model, const FunctionPair& pair);

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string note;
    std::optional<double> witness; // offending t on failure
};

struct HypothesisReport {
    std::string battery; // which hypothesis set ran
    std::vector<HypothesisCheck> checks;
    std::vector<std::string> notes;
    bool all_pass() const;
};

// Symbolic exponent checks plus a numeric sample grid for the existence
// hypotheses behind J6, J7 and Jvmn. lambda_mp/lambda_nq feed the poly-global
// (H2) comparison when supplied.
HypothesisReport validate_hypotheses(const EnergyModel& model,
                                     std::optional<double> lambda_mp = {},
                                     std::optional<double> lambda_nq = {});

} // namespace grapde
