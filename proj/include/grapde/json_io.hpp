#pragma once

#include "grapde/energy.hpp"
#include "grapde/graph.hpp"
#include "grapde/solver.hpp"
#include "grapde/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace grapde::io {

using json = nlohmann::ordered_json;

// {"vertices": n, "edges": [[i,j,w],...]} with canonical edge order
json graph_json(const WeightedGraph& g);

// {"omega": [ids]}
json domain_json(const DomainSpec& d);
DomainSpec domain_from_json(const WeightedGraph& g, const nlohmann::json& j);

// Model JSON: {"tag": "...", "params": {...}, "nonlinearity": {...}}.
// Tags needing lambda_1-type quantities (j1_toda eigenspace, j5 bounds)
// compute them from the graph here.
EnergyModel model_from_json(const WeightedGraph& g, std::optional<DomainSpec> domain,
                            const nlohmann::json& j);
// canonical re-serialization of a parsed model (for embedding in reports)
json model_json(const EnergyModel& m);

json solve_report_json(const EnergyModel& model, const SolveReport& rep, bool with_trace);
json hypothesis_report_json(const HypothesisReport& rep);
json check_report_json(const CheckReport& rep);
json exhaustion_report_json(const ExhaustFamily& fam, const ExhaustionReport& rep);

// CSV with the fixed column order: vertex id, u, v, residual_u, residual_v;
// floats as %.17g
std::string pair_csv(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v,
                     const GraphFunction& ru, const GraphFunction& rv);

// Minimal structural schema validation: "type", "required", "properties",
// "items" (single-schema form), "enum". Returns false and fills `error` with
// a JSON-pointer-ish path on the first mismatch.
bool validate_schema(const nlohmann::json& doc, const nlohmann::json& schema, std::string& error);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace grapde::io
