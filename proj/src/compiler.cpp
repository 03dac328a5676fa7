#include "bnet/compiler.hpp"

#include <algorithm>
#include <sstream>

#include "bnet/document.hpp"

namespace bnet {

UndirectedGraph::UndirectedGraph(std::vector<std::string> ids)
    : ids_(std::move(ids)), adjacency_(ids_.size()) {}

bool UndirectedGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return false;
  bool added = adjacency_[a].insert(b).second;
  adjacency_[b].insert(a);
  return added;
}

bool UndirectedGraph::adjacent(std::size_t a, std::size_t b) const {
  return adjacency_[a].count(b) > 0;
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& nb : adjacency_) n += nb.size();
  return n / 2;
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < adjacency_.size(); ++a)
    for (std::size_t b : adjacency_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::vector<std::vector<std::size_t>> CliqueForest::children() const {
  std::vector<std::vector<std::size_t>> out(cliques.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (parent[i]) out[*parent[i]].push_back(i);
  return out;
}

std::size_t CliqueForest::root_of(std::size_t i) const {
  while (parent[i]) i = *parent[i];
  return i;
}

std::size_t CliqueForest::total_cells() const {
  std::size_t n = 0;
  for (const auto& c : cliques) n += c.potential.size();
  for (std::size_t i = 0; i < separators.size(); ++i)
    if (parent[i]) n += separators[i].size();
  return n;
}

UndirectedGraph moralize(const BeliefNetwork& net) {
  std::vector<std::string> ids;
  for (const auto& v : net.variables) ids.push_back(v.id);
  UndirectedGraph g(std::move(ids));
  for (std::size_t child = 0; child < net.size(); ++child) {
    const auto parents = net.parent_indices(child);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      g.add_edge(parents[i], child);
      for (std::size_t j = i + 1; j < parents.size(); ++j) g.add_edge(parents[i], parents[j]);
    }
  }
  return g;
}

EliminationOrder mcs_order(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  EliminationOrder order;
  order.number.assign(n, 0);
  std::vector<std::size_t> weight(n, 0);

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (order.number[v] != 0) continue;
      if (best == n || weight[v] > weight[best]) best = v;
    }
    if (step > 0 && weight[best] == 0) order.restarts.push_back(step);
    order.number[best] = step + 1;
    order.sequence.push_back(best);
    for (std::size_t w : g.neighbors(best))
      if (order.number[w] == 0) ++weight[w];
  }
  return order;
}

Triangulation triangulate(const UndirectedGraph& g, const EliminationOrder& order) {
  Triangulation out{g, {}};
  auto& h = out.graph;
  for (std::size_t k = order.sequence.size(); k-- > 0;) {
    const std::size_t v = order.sequence[k];
    std::vector<std::size_t> lower;
    for (std::size_t w : h.neighbors(v))
      if (order.number[w] < order.number[v]) lower.push_back(w);
    for (std::size_t i = 0; i < lower.size(); ++i)
      for (std::size_t j = i + 1; j < lower.size(); ++j)
        if (h.add_edge(lower[i], lower[j]))
          out.fill_ins.emplace_back(std::min(lower[i], lower[j]), std::max(lower[i], lower[j]));
  }
  std::sort(out.fill_ins.begin(), out.fill_ins.end());
  return out;
}

bool is_chordal(const UndirectedGraph& g) {
  return triangulate(g, mcs_order(g)).fill_ins.empty();
}

std::vector<std::vector<std::size_t>> identify_cliques(const UndirectedGraph& chordal,
                                                       const EliminationOrder& order) {
  if (!triangulate(chordal, order).fill_ins.empty())
    throw Error("graph is not chordal under the given elimination order");

  // Candidate k belongs to the vertex numbered k + 1.
  std::vector<std::vector<std::size_t>> candidates;
  candidates.reserve(order.sequence.size());
  for (std::size_t v : order.sequence) {
    std::vector<std::size_t> members{v};
    for (std::size_t w : chordal.neighbors(v))
      if (order.number[w] < order.number[v]) members.push_back(w);
    std::sort(members.begin(), members.end());
    candidates.push_back(std::move(members));
  }

  std::vector<std::vector<std::size_t>> cliques;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    bool maximal = true;
    for (std::size_t m = 0; m < candidates.size() && maximal; ++m) {
      if (m == k || candidates[m].size() <= candidates[k].size()) continue;
      if (std::includes(candidates[m].begin(), candidates[m].end(), candidates[k].begin(),
                        candidates[k].end()))
        maximal = false;
    }
    if (maximal) cliques.push_back(candidates[k]);
  }
  return cliques;
}

CliqueForest build_forest(const std::vector<std::vector<std::size_t>>& cliques) {
  CliqueForest forest;
  forest.parent.assign(cliques.size(), std::nullopt);
  forest.separators.resize(cliques.size());

  std::vector<std::size_t> seen;  // union of earlier cliques, sorted
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    Clique c;
    c.index = i;
    c.vars = cliques[i];
    forest.cliques.push_back(std::move(c));

    std::vector<std::size_t> sep;
    std::set_intersection(cliques[i].begin(), cliques[i].end(), seen.begin(), seen.end(),
                          std::back_inserter(sep));
    if (sep.empty()) {
      forest.roots.push_back(i);
    } else {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::includes(cliques[j].begin(), cliques[j].end(), sep.begin(), sep.end())) {
          forest.parent[i] = j;
          break;
        }
      }
      if (!forest.parent[i])
        throw Error("running intersection violated at clique " + std::to_string(i));
    }
    forest.separators[i] = PotentialTable(sep, std::vector<std::vector<std::size_t>>(sep.size()), 0);

    std::vector<std::size_t> merged;
    std::set_union(seen.begin(), seen.end(), cliques[i].begin(), cliques[i].end(),
                   std::back_inserter(merged));
    seen = std::move(merged);
  }
  return forest;
}

void initialize_potentials(const BeliefNetwork& net, CliqueForest& forest) {
  std::vector<std::size_t> card;
  for (const auto& v : net.variables) card.push_back(v.cardinality());

  auto cells_of = [&](const std::vector<std::size_t>& vars) {
    std::size_t n = 1;
    for (std::size_t v : vars) n *= card[v];
    return n;
  };
  // Smallest clique containing every member of `family`.
  auto smallest_container = [&](const std::vector<std::size_t>& family) {
    std::optional<std::size_t> best;
    for (const auto& c : forest.cliques) {
      if (!std::includes(c.vars.begin(), c.vars.end(), family.begin(), family.end())) continue;
      if (!best || cells_of(c.vars) < cells_of(forest.cliques[*best].vars)) best = c.index;
    }
    return best;
  };

  for (auto& c : forest.cliques) {
    c.assigned_cpts.clear();
    c.potential = PotentialTable::full(c.vars, card, 1.0);
  }
  for (std::size_t i = 0; i < forest.separators.size(); ++i)
    forest.separators[i] = PotentialTable::full(forest.separators[i].scope(), card, 1.0);

  forest.home.assign(net.size(), 0);
  for (std::size_t v = 0; v < net.size(); ++v) {
    auto home = smallest_container({v});
    if (!home) throw Error("variable '" + net.variables[v].id + "' is not in any clique");
    forest.home[v] = *home;
  }

  for (std::size_t child = 0; child < net.size(); ++child) {
    const auto parents = net.parent_indices(child);
    std::vector<std::size_t> family = parents;
    family.push_back(child);
    std::sort(family.begin(), family.end());
    auto target = smallest_container(family);
    if (!target)
      throw Error("family of '" + net.variables[child].id + "' is not covered by any clique");

    // CPT strides: child fastest, then parents from last to first.
    std::vector<std::size_t> cpt_stride(net.size(), 0);
    std::size_t s = card[child];
    cpt_stride[child] = 1;
    for (std::size_t j = parents.size(); j-- > 0;) {
      cpt_stride[parents[j]] = s;
      s *= card[parents[j]];
    }

    auto& clique = forest.cliques[*target];
    std::vector<std::size_t> dims, strides;
    for (std::size_t v : clique.vars) {
      dims.push_back(card[v]);
      strides.push_back(cpt_stride[v]);
    }
    const auto& table = net.cpts[child].table;
    auto& cells = clique.potential.cells();
    for_each_mapped(dims, strides, [&](std::size_t i, std::size_t j) { cells[i] *= table[j]; });
    clique.assigned_cpts.push_back(child);
  }
}

ForestStats forest_stats(const CliqueForest& forest) {
  ForestStats stats;
  stats.cliques = forest.cliques.size();
  stats.trees = forest.roots.size();
  for (const auto& c : forest.cliques) {
    stats.max_clique_vars = std::max(stats.max_clique_vars, c.vars.size());
    stats.clique_cells += c.potential.size();
  }
  for (std::size_t i = 0; i < forest.separators.size(); ++i)
    if (forest.parent[i]) stats.separator_cells += forest.separators[i].size();
  return stats;
}

std::shared_ptr<const CompiledNetwork> compile(const BeliefNetwork& net) {
  require_valid(net);
  auto out = std::make_shared<CompiledNetwork>();
  out->network = net;
  for (const auto& v : net.variables) out->cardinalities.push_back(v.cardinality());
  out->moral_graph = moralize(net);
  out->order = mcs_order(out->moral_graph);
  out->triangulation = triangulate(out->moral_graph, out->order);
  out->clique_order = mcs_order(out->triangulation.graph);
  out->forest = build_forest(identify_cliques(out->triangulation.graph, out->clique_order));
  initialize_potentials(net, out->forest);
  return out;
}

std::string forest_to_dot(const CompiledNetwork& compiled) {
  const auto& net = compiled.network;
  const auto& forest = compiled.forest;
  auto names = [&](const std::vector<std::size_t>& vars) {
    std::string s;
    for (std::size_t v : vars) {
      if (!s.empty()) s += ",";
      s += net.variables[v].id;
    }
    return s;
  };
  std::ostringstream out;
  out << "graph " << dot_quote(net.name.empty() ? "forest" : net.name) << " {\n";
  out << "  node [shape=box];\n";
  for (const auto& c : forest.cliques)
    out << "  c" << c.index << " [label=" << dot_quote(names(c.vars)) << "];\n";
  for (std::size_t i = 0; i < forest.cliques.size(); ++i)
    if (forest.parent[i])
      out << "  c" << *forest.parent[i] << " -- c" << i
          << " [label=" << dot_quote(names(forest.separators[i].scope())) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace bnet
