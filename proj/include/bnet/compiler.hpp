#pragma once

// Compilation of a belief network into a junction forest: moralization,
// maximum cardinality search, fill-in triangulation, maximal cliques, forest
// assembly and initial clique potentials.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/potential.hpp"

namespace bnet {

using Edge = std::pair<std::size_t, std::size_t>;

// Vertices are identified by position; ids are kept for reporting.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::set<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }

  // Self-loops are ignored. Returns true if the edge is new.
  bool add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t edge_count() const;
  // Each edge once as (low, high), sorted.
  std::vector<Edge> edges() const;

  bool operator==(const UndirectedGraph&) const = default;

 private:
  std::vector<std::string> ids_;
  std::vector<std::set<std::size_t>> adjacency_;
};

struct EliminationOrder {
  // sequence[k] is the vertex numbered k + 1.
  std::vector<std::size_t> sequence;
  // 1-based number of each vertex.
  std::vector<std::size_t> number;
  // Positions in `sequence` where the search restarted in a new component.
  std::vector<std::size_t> restarts;

  bool operator==(const EliminationOrder&) const = default;
};

struct Triangulation {
  UndirectedGraph graph;
  std::vector<Edge> fill_ins;
};

struct Clique {
  std::size_t index = 0;
  // Variable indices, ascending (declaration order).
  std::vector<std::size_t> vars;
  // Variables whose CPT was multiplied into this clique.
  std::vector<std::size_t> assigned_cpts;
  PotentialTable potential;
};

struct CliqueForest {
  std::vector<Clique> cliques;
  // parent[i] < i for every non-root clique.
  std::vector<std::optional<std::size_t>> parent;
  // separators[i] joins clique i to its parent; empty scope for roots.
  std::vector<PotentialTable> separators;
  std::vector<std::size_t> roots;
  // Per variable: smallest clique (fewest cells, then lowest index)
  // containing it. Filled by initialize_potentials.
  std::vector<std::size_t> home;

  std::vector<std::vector<std::size_t>> children() const;
  // Roots whose tree contains clique i.
  std::size_t root_of(std::size_t i) const;
  std::size_t total_cells() const;
};

struct ForestStats {
  std::size_t cliques = 0;
  std::size_t trees = 0;
  std::size_t max_clique_vars = 0;
  std::size_t clique_cells = 0;
  std::size_t separator_cells = 0;

  std::size_t total_cells() const { return clique_cells + separator_cells; }
  bool operator==(const ForestStats&) const = default;
};

UndirectedGraph moralize(const BeliefNetwork& net);

// Maximum cardinality search. Ties go to the lowest vertex index; when no
// unnumbered vertex has a numbered neighbour the search restarts in a new
// component from the lowest unnumbered vertex.
EliminationOrder mcs_order(const UndirectedGraph& g);

// Eliminates vertices from the highest number down, pairwise connecting the
// lower-numbered neighbours of each.
Triangulation triangulate(const UndirectedGraph& g, const EliminationOrder& order);

bool is_chordal(const UndirectedGraph& g);

// Maximal cliques of a chordal graph, each a vertex plus its lower-numbered
// neighbours, ordered by the highest MCS number they contain. Throws Error
// if the graph is not chordal under `order`.
std::vector<std::vector<std::size_t>> identify_cliques(const UndirectedGraph& chordal,
                                                       const EliminationOrder& order);

// Separator of clique i = its intersection with the union of cliques 0..i-1;
// parent = earliest earlier clique containing the separator; empty
// separators make roots. Potentials are left empty.
CliqueForest build_forest(const std::vector<std::vector<std::size_t>>& cliques);

// Assigns every CPT to its smallest containing clique and multiplies it in;
// other cells start at 1, as do all separators.
void initialize_potentials(const BeliefNetwork& net, CliqueForest& forest);

ForestStats forest_stats(const CliqueForest& forest);

struct CompiledNetwork {
  BeliefNetwork network;
  std::vector<std::size_t> cardinalities;
  UndirectedGraph moral_graph;
  EliminationOrder order;
  Triangulation triangulation;
  // Search repeated on the triangulated graph; numbers the cliques.
  EliminationOrder clique_order;
  CliqueForest forest;
};

// Full pipeline. Validates the network first (throws ValidationError).
std::shared_ptr<const CompiledNetwork> compile(const BeliefNetwork& net);

// Cliques as boxes, separators as edge labels.
std::string forest_to_dot(const CompiledNetwork& compiled);

}  // namespace bnet
