#pragma once

// Belief-network data model: variables, conditional probability tables,
// validation, topological utilities and merging of independently built
// networks.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnet/errors.hpp"

namespace bnet {

inline constexpr double kRowSumTolerance = 1e-9;

struct Variable {
  std::string id;
  std::string label;
  std::vector<std::string> values;

  std::size_t cardinality() const { return values.size(); }
  std::optional<std::size_t> value_index(std::string_view value_label) const;

  bool operator==(const Variable&) const = default;
};

// P(child | parents). The flat table is mixed-radix over (parents in declared
// order, then child): child digit fastest, first parent most significant.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<double> table;

  bool operator==(const Cpt&) const = default;
};

struct BeliefNetwork {
  std::string name;
  std::vector<Variable> variables;
  // cpts[i] belongs to variables[i].
  std::vector<Cpt> cpts;
  // Opaque editor sidecar (compact JSON text, empty if absent). Never read by
  // inference.
  std::string layout;

  std::size_t size() const { return variables.size(); }
  bool empty() const { return variables.empty(); }

  std::optional<std::size_t> find(std::string_view id) const;
  // Throws EvidenceError(UnknownVariable) when id is not declared.
  std::size_t index_of(std::string_view id) const;

  // Parent indices of variable i in the CPT's declared order. Unknown parents
  // are skipped; validate() reports them.
  std::vector<std::size_t> parent_indices(std::size_t i) const;
  std::size_t arc_count() const;

  // Appends a variable together with its CPT.
  void add(Variable var, std::vector<std::string> parents, std::vector<double> table);

  bool operator==(const BeliefNetwork&) const = default;
};

enum class IssueKind {
  EmptyId,
  InvalidId,
  DuplicateId,
  TooFewValues,
  DuplicateValueLabel,
  CptMismatch,
  UnknownParent,
  SelfLoop,
  DuplicateParent,
  CptLength,
  ProbabilityRange,
  RowSum,
  Cycle,
};

std::string_view to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  // Variable the issue is attached to; empty for network-wide issues.
  std::string variable;
  // Row (parent configuration) and, for range issues, child value column.
  std::vector<std::size_t> coordinates;
  // Cycle members, or the offending ids for reference issues.
  std::vector<std::string> members;
  std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

// Empty report iff every invariant holds; otherwise lists every violation.
ValidationReport validate(const BeliefNetwork& net);

// Throws ValidationError when the report is non-empty.
void require_valid(const BeliefNetwork& net);

// Parents before children, ties broken by declaration order. Throws
// CycleError on cyclic input.
std::vector<std::string> topological_order(const BeliefNetwork& net);
std::vector<std::size_t> topological_indices(const BeliefNetwork& net);

// Union of both networks. Colliding ids in `addition` are renamed with a
// "_2", "_3", ... suffix and parent references rewritten.
BeliefNetwork merge_networks(const BeliefNetwork& base, const BeliefNetwork& addition);

// Partial assignment of variable ids to observed value indices.
class EvidenceSet {
 public:
  using Map = std::map<std::string, std::size_t>;

  EvidenceSet() = default;
  EvidenceSet(std::initializer_list<std::pair<const std::string, std::size_t>> init);

  // Throws EvidenceError(Contradiction) if id is already bound to another value.
  void set(const std::string& id, std::size_t value);
  std::optional<std::size_t> get(std::string_view id) const;
  bool contains(std::string_view id) const { return get(id).has_value(); }

  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }
  Map::const_iterator begin() const { return assignments_.begin(); }
  Map::const_iterator end() const { return assignments_.end(); }

  // Union; throws on contradiction.
  void merge(const EvidenceSet& other);

  bool operator==(const EvidenceSet&) const = default;

 private:
  Map assignments_;
};

// Throws EvidenceError for unknown variables or out-of-range indices.
void check_evidence(const BeliefNetwork& net, const EvidenceSet& evidence);

// Resolves "var" -> "value label" bindings to value indices.
EvidenceSet evidence_from_labels(const BeliefNetwork& net,
                                 const std::vector<std::pair<std::string, std::string>>& bindings);

}  // namespace bnet
