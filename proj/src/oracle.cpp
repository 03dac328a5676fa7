#include "bnet/oracle.hpp"

namespace bnet {

JointTable joint(const BeliefNetwork& net, std::size_t cap) {
  JointTable out;
  out.order = topological_indices(net);
  std::size_t total = 1;
  for (std::size_t v : out.order) {
    const std::size_t k = net.variables[v].cardinality();
    if (total > cap / k)
      throw CapExceeded("joint state space of '" + net.name + "' exceeds " + std::to_string(cap) +
                        " cells");
    total *= k;
    out.cardinalities.push_back(k);
  }

  std::vector<std::vector<std::size_t>> parents(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) parents[v] = net.parent_indices(v);

  out.cells.assign(total, 0.0);
  std::vector<std::size_t> assignment(net.size(), 0);
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::size_t rest = cell;
    for (std::size_t p = out.order.size(); p-- > 0;) {
      assignment[out.order[p]] = rest % out.cardinalities[p];
      rest /= out.cardinalities[p];
    }
    double prob = 1.0;
    for (std::size_t v = 0; v < net.size(); ++v) {
      std::size_t row = 0;
      for (std::size_t p : parents[v]) row = row * net.variables[p].cardinality() + assignment[p];
      prob *= net.cpts[v].table[row * net.variables[v].cardinality() + assignment[v]];
    }
    out.cells[cell] = prob;
  }
  return out;
}

OracleReport oracle_posteriors(const BeliefNetwork& net, const EvidenceSet& evidence,
                               std::size_t cap) {
  check_evidence(net, evidence);
  const JointTable table = joint(net, cap);

  std::vector<std::optional<std::size_t>> observed(net.size());
  for (const auto& [id, value] : evidence) observed[net.index_of(id)] = value;

  OracleReport out;
  out.posteriors.resize(net.size());
  for (std::size_t v = 0; v < net.size(); ++v)
    out.posteriors[v].assign(net.variables[v].cardinality(), 0.0);

  std::vector<std::size_t> assignment(net.size(), 0);
  double mass = 0.0;
  for (std::size_t cell = 0; cell < table.cells.size(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t p = table.order.size(); p-- > 0;) {
      assignment[table.order[p]] = rest % table.cardinalities[p];
      rest /= table.cardinalities[p];
    }
    bool consistent = true;
    for (std::size_t v = 0; v < net.size() && consistent; ++v)
      if (observed[v] && assignment[v] != *observed[v]) consistent = false;
    if (!consistent) continue;
    const double p = table.cells[cell];
    mass += p;
    for (std::size_t v = 0; v < net.size(); ++v) out.posteriors[v][assignment[v]] += p;
  }

  if (mass <= 0.0) throw ImpossibleEvidence("evidence has zero probability");
  out.p_evidence = mass;
  for (auto& dist : out.posteriors)
    for (double& p : dist) p /= mass;
  return out;
}

OraclePosterior oracle_posterior(const BeliefNetwork& net, const EvidenceSet& evidence,
                                 std::string_view var, std::size_t cap) {
  const std::size_t v = net.index_of(var);
  auto report = oracle_posteriors(net, evidence, cap);
  return {std::move(report.posteriors[v]), report.p_evidence};
}

}  // namespace bnet
