#include "bnet/generate.hpp"

#include <algorithm>
#include <numeric>

namespace bnet {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BeliefNetwork generate_network(const GeneratorOptions& options) {
  if (options.min_card < 2 || options.max_card < options.min_card)
    throw Error("cardinality range must satisfy 2 <= min <= max");
  std::mt19937_64 rng(options.seed);
  const std::size_t n = options.nodes;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t child = 1; child < n; ++child)
    for (std::size_t parent = 0; parent < child; ++parent) pairs.emplace_back(parent, child);
  for (std::size_t i = pairs.size(); i > 1; --i)
    std::swap(pairs[i - 1], pairs[uniform_index(rng, i)]);

  std::vector<std::vector<std::size_t>> parents(n);
  std::size_t placed = 0;
  for (const auto& [parent, child] : pairs) {
    if (placed == options.arcs) break;
    if (options.max_parents && parents[child].size() >= options.max_parents) continue;
    parents[child].push_back(parent);
    ++placed;
  }
  if (placed < options.arcs)
    throw Error("cannot place " + std::to_string(options.arcs) + " arcs on " + std::to_string(n) +
                " nodes under the parent limit");

  std::vector<std::size_t> card(n);
  for (auto& k : card) k = options.min_card + uniform_index(rng, options.max_card - options.min_card + 1);

  BeliefNetwork net;
  net.name = "random-" + std::to_string(options.seed);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(parents[v].begin(), parents[v].end());
    Variable var;
    var.id = "X" + std::to_string(v);
    var.label = "Variable " + std::to_string(v);
    for (std::size_t k = 0; k < card[v]; ++k) var.values.push_back("s" + std::to_string(k));

    std::size_t rows = 1;
    std::vector<std::string> parent_ids;
    for (std::size_t p : parents[v]) {
      rows *= card[p];
      parent_ids.push_back("X" + std::to_string(p));
    }
    std::vector<double> table;
    table.reserve(rows * card[v]);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> weights(card[v]);
      for (auto& w : weights) w = 0.05 + uniform_unit(rng);
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      for (double w : weights) table.push_back(w / total);
    }
    net.add(std::move(var), std::move(parent_ids), std::move(table));
  }
  return net;
}

std::vector<std::size_t> forward_sample(const BeliefNetwork& net, std::mt19937_64& rng) {
  std::vector<std::size_t> assignment(net.size(), 0);
  for (std::size_t v : topological_indices(net)) {
    std::size_t row = 0;
    for (std::size_t p : net.parent_indices(v))
      row = row * net.variables[p].cardinality() + assignment[p];
    const std::size_t k = net.variables[v].cardinality();
    const double u = uniform_unit(rng);
    double acc = 0.0;
    std::size_t pick = k - 1;
    while (pick > 0 && net.cpts[v].table[row * k + pick] == 0.0) --pick;
    for (std::size_t c = 0; c < k; ++c) {
      const double p = net.cpts[v].table[row * k + c];
      acc += p;
      if (u < acc && p > 0.0) {
        pick = c;
        break;
      }
    }
    assignment[v] = pick;
  }
  return assignment;
}

EvidenceSet sample_evidence(const BeliefNetwork& net, std::size_t count, std::mt19937_64& rng) {
  const auto assignment = forward_sample(net, rng);
  std::vector<std::size_t> vars(net.size());
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  for (std::size_t i = vars.size(); i > 1; --i) std::swap(vars[i - 1], vars[uniform_index(rng, i)]);
  EvidenceSet ev;
  for (std::size_t i = 0; i < std::min(count, vars.size()); ++i)
    ev.set(net.variables[vars[i]].id, assignment[vars[i]]);
  return ev;
}

}  // namespace bnet
