#include "bnet/json_io.hpp"

namespace bnet {

Json stats_to_json(const ForestStats& stats) {
  Json out;
  out["cliques"] = stats.cliques;
  out["trees"] = stats.trees;
  out["max_clique_vars"] = stats.max_clique_vars;
  out["clique_cells"] = stats.clique_cells;
  out["separator_cells"] = stats.separator_cells;
  return out;
}

Json report_to_json(const BeliefNetwork& net, const PosteriorReport& report) {
  Json out;
  Json evidence = Json::object();
  for (const auto& var : net.variables)
    if (auto value = report.evidence.get(var.id)) evidence[var.id] = var.values[*value];
  out["evidence"] = std::move(evidence);
  out["p_evidence"] = report.p_evidence;
  Json posteriors = Json::object();
  for (std::size_t v = 0; v < net.size() && v < report.posteriors.size(); ++v)
    posteriors[net.variables[v].id] = report.posteriors[v];
  out["posteriors"] = std::move(posteriors);
  out["counters"] = {{"checks", report.counters.checks},
                     {"cells_sent", report.counters.cells_sent}};
  out["elapsed_us"] = report.elapsed_us;
  return out;
}

Json issues_to_json(const ValidationReport& issues) {
  Json out = Json::array();
  for (const auto& issue : issues) {
    Json entry;
    entry["kind"] = std::string(to_string(issue.kind));
    if (!issue.variable.empty()) entry["variable"] = issue.variable;
    if (!issue.coordinates.empty()) entry["coordinates"] = issue.coordinates;
    if (!issue.members.empty()) entry["members"] = issue.members;
    entry["message"] = issue.message;
    out.push_back(std::move(entry));
  }
  return out;
}

EvidenceSet evidence_from_json(const BeliefNetwork& net, const Json& bindings) {
  if (!bindings.is_object())
    throw EvidenceError(EvidenceError::Kind::UnknownVariable,
                        "evidence must be an object of variable -> value label");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [id, label] : bindings.items()) {
    if (!label.is_string())
      throw EvidenceError(EvidenceError::Kind::UnknownValue,
                          "value for '" + id + "' must be a value label string");
    pairs.emplace_back(id, label.get<std::string>());
  }
  return evidence_from_labels(net, pairs);
}

}  // namespace bnet
