#include "bnet/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bnet {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

bool valid_id(std::string_view id) {
  return std::none_of(id.begin(), id.end(),
                      [](unsigned char c) { return std::isspace(c) || std::iscntrl(c); });
}

// Strongly connected components of the parent->child arc graph with more
// than one member, each sorted by declaration index. Tarjan's algorithm.
std::vector<std::vector<std::size_t>> cyclic_components(
    const std::vector<std::vector<std::size_t>>& children) {
  const std::size_t n = children.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : children[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      if (comp.size() > 1) {
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> child_lists(const BeliefNetwork& net) {
  std::vector<std::vector<std::size_t>> children(net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t p : net.parent_indices(i))
      if (p != i) children[p].push_back(i);
  return children;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error([&] {
        std::string msg = "network failed validation";
        for (const auto& issue : issues) msg += "\n  " + issue.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

CycleError::CycleError(std::vector<std::string> members)
    : Error("cycle detected among {" + join(members) + "}"), members_(std::move(members)) {}

std::optional<std::size_t> Variable::value_index(std::string_view value_label) const {
  auto it = std::find(values.begin(), values.end(), value_label);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

std::optional<std::size_t> BeliefNetwork::find(std::string_view id) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].id == id) return i;
  return std::nullopt;
}

std::size_t BeliefNetwork::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw EvidenceError(EvidenceError::Kind::UnknownVariable,
                      "unknown variable '" + std::string(id) + "'");
}

std::vector<std::size_t> BeliefNetwork::parent_indices(std::size_t i) const {
  std::vector<std::size_t> out;
  if (i >= cpts.size()) return out;
  for (const auto& p : cpts[i].parents)
    if (auto j = find(p)) out.push_back(*j);
  return out;
}

std::size_t BeliefNetwork::arc_count() const {
  std::size_t n = 0;
  for (const auto& cpt : cpts) n += cpt.parents.size();
  return n;
}

void BeliefNetwork::add(Variable var, std::vector<std::string> parents,
                        std::vector<double> table) {
  Cpt cpt{var.id, std::move(parents), std::move(table)};
  variables.push_back(std::move(var));
  cpts.push_back(std::move(cpt));
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::EmptyId: return "empty_id";
    case IssueKind::InvalidId: return "invalid_id";
    case IssueKind::DuplicateId: return "duplicate_id";
    case IssueKind::TooFewValues: return "too_few_values";
    case IssueKind::DuplicateValueLabel: return "duplicate_value_label";
    case IssueKind::CptMismatch: return "cpt_mismatch";
    case IssueKind::UnknownParent: return "unknown_parent";
    case IssueKind::SelfLoop: return "self_loop";
    case IssueKind::DuplicateParent: return "duplicate_parent";
    case IssueKind::CptLength: return "cpt_length";
    case IssueKind::ProbabilityRange: return "probability_range";
    case IssueKind::RowSum: return "row_sum";
    case IssueKind::Cycle: return "cycle";
  }
  return "unknown";
}

ValidationReport validate(const BeliefNetwork& net) {
  ValidationReport report;
  auto add = [&](IssueKind kind, std::string var, std::string message,
                 std::vector<std::size_t> coords = {}, std::vector<std::string> members = {}) {
    report.push_back({kind, std::move(var), std::move(coords), std::move(members),
                      std::move(message)});
  };

  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < net.variables.size(); ++i) {
    const auto& v = net.variables[i];
    if (v.id.empty()) {
      add(IssueKind::EmptyId, "", "variable #" + std::to_string(i) + " has an empty id");
    } else if (!valid_id(v.id)) {
      add(IssueKind::InvalidId, v.id, "variable id '" + v.id + "' contains whitespace");
    }
    if (!seen.emplace(v.id, i).second)
      add(IssueKind::DuplicateId, v.id, "variable id '" + v.id + "' declared more than once");
    if (v.values.size() < 2)
      add(IssueKind::TooFewValues, v.id,
          "variable '" + v.id + "' has " + std::to_string(v.values.size()) +
              " values; at least 2 required");
    std::set<std::string> labels;
    for (const auto& label : v.values)
      if (!labels.insert(label).second)
        add(IssueKind::DuplicateValueLabel, v.id,
            "variable '" + v.id + "' repeats value label '" + label + "'");
  }

  if (net.cpts.size() != net.variables.size()) {
    add(IssueKind::CptMismatch, "",
        "network has " + std::to_string(net.variables.size()) + " variables but " +
            std::to_string(net.cpts.size()) + " CPTs");
  }

  const std::size_t ncpt = std::min(net.cpts.size(), net.variables.size());
  for (std::size_t i = 0; i < ncpt; ++i) {
    const auto& var = net.variables[i];
    const auto& cpt = net.cpts[i];
    if (cpt.child != var.id) {
      add(IssueKind::CptMismatch, var.id,
          "CPT #" + std::to_string(i) + " is for '" + cpt.child + "', expected '" + var.id + "'");
      continue;
    }
    bool parents_ok = true;
    std::size_t rows = 1;
    std::set<std::string> distinct;
    for (const auto& p : cpt.parents) {
      if (!distinct.insert(p).second) {
        add(IssueKind::DuplicateParent, var.id,
            "variable '" + var.id + "' lists parent '" + p + "' twice", {}, {p});
        parents_ok = false;
      }
      if (p == var.id) {
        add(IssueKind::SelfLoop, var.id, "variable '" + var.id + "' is its own parent", {}, {p});
        parents_ok = false;
        continue;
      }
      auto j = net.find(p);
      if (!j) {
        add(IssueKind::UnknownParent, var.id,
            "variable '" + var.id + "' references undeclared parent '" + p + "'", {}, {p});
        parents_ok = false;
        continue;
      }
      rows *= net.variables[*j].cardinality();
    }
    const std::size_t k = var.cardinality();
    if (!parents_ok || k == 0) continue;
    if (cpt.table.size() != rows * k) {
      add(IssueKind::CptLength, var.id,
          "CPT of '" + var.id + "' has " + std::to_string(cpt.table.size()) +
              " entries; expected " + std::to_string(rows * k));
      continue;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      bool in_range = true;
      for (std::size_t c = 0; c < k; ++c) {
        const double p = cpt.table[r * k + c];
        if (!(p >= 0.0 && p <= 1.0)) {
          std::ostringstream msg;
          msg << "CPT of '" << var.id << "' entry (row " << r << ", value " << c << ") = " << p
              << " is outside [0,1]";
          add(IssueKind::ProbabilityRange, var.id, msg.str(), {r, c});
          in_range = false;
        }
        sum += p;
      }
      if (in_range && std::abs(sum - 1.0) > kRowSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "CPT of '" << var.id << "' row " << r << " sums to " << sum;
        add(IssueKind::RowSum, var.id, msg.str(), {r});
      }
    }
  }

  for (const auto& comp : cyclic_components(child_lists(net))) {
    std::vector<std::string> members;
    for (std::size_t v : comp) members.push_back(net.variables[v].id);
    add(IssueKind::Cycle, "", "cycle detected among {" + join(members) + "}", {}, members);
  }
  return report;
}

void require_valid(const BeliefNetwork& net) {
  auto report = validate(net);
  if (!report.empty()) throw ValidationError(std::move(report));
}

std::vector<std::size_t> topological_indices(const BeliefNetwork& net) {
  const std::size_t n = net.size();
  auto children = child_lists(net);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& cs : children)
    for (std::size_t c : cs) ++indegree[c];

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);

  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (order.size() != n) {
    std::vector<std::string> members;
    for (const auto& comp : cyclic_components(children))
      for (std::size_t v : comp) members.push_back(net.variables[v].id);
    throw CycleError(std::move(members));
  }
  return order;
}

std::vector<std::string> topological_order(const BeliefNetwork& net) {
  std::vector<std::string> out;
  for (std::size_t i : topological_indices(net)) out.push_back(net.variables[i].id);
  return out;
}

BeliefNetwork merge_networks(const BeliefNetwork& base, const BeliefNetwork& addition) {
  BeliefNetwork out = base;
  if (out.name.empty()) out.name = addition.name;
  if (out.layout.empty()) out.layout = addition.layout;

  std::unordered_set<std::string> taken;
  for (const auto& v : base.variables) taken.insert(v.id);

  std::unordered_map<std::string, std::string> renamed;
  for (const auto& v : addition.variables) {
    std::string id = v.id;
    for (int suffix = 2; taken.count(id); ++suffix) id = v.id + "_" + std::to_string(suffix);
    taken.insert(id);
    renamed[v.id] = id;
  }

  for (std::size_t i = 0; i < addition.variables.size(); ++i) {
    Variable var = addition.variables[i];
    var.id = renamed.at(var.id);
    Cpt cpt = i < addition.cpts.size() ? addition.cpts[i] : Cpt{};
    for (auto& p : cpt.parents)
      if (auto it = renamed.find(p); it != renamed.end()) p = it->second;
    out.add(std::move(var), std::move(cpt.parents), std::move(cpt.table));
  }

  require_valid(out);
  return out;
}

EvidenceSet::EvidenceSet(std::initializer_list<std::pair<const std::string, std::size_t>> init) {
  for (const auto& [id, value] : init) set(id, value);
}

void EvidenceSet::set(const std::string& id, std::size_t value) {
  auto [it, inserted] = assignments_.emplace(id, value);
  if (!inserted && it->second != value)
    throw EvidenceError(EvidenceError::Kind::Contradiction,
                        "variable '" + id + "' is already instantiated to value index " +
                            std::to_string(it->second));
}

std::optional<std::size_t> EvidenceSet::get(std::string_view id) const {
  auto it = assignments_.find(std::string(id));
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

void EvidenceSet::merge(const EvidenceSet& other) {
  for (const auto& [id, value] : other) {
    if (auto cur = get(id); cur && *cur != value)
      throw EvidenceError(EvidenceError::Kind::Contradiction,
                          "variable '" + id + "' is already instantiated to value index " +
                              std::to_string(*cur));
  }
  for (const auto& [id, value] : other) assignments_[id] = value;
}

void check_evidence(const BeliefNetwork& net, const EvidenceSet& evidence) {
  for (const auto& [id, value] : evidence) {
    const auto& var = net.variables[net.index_of(id)];
    if (value >= var.cardinality())
      throw EvidenceError(EvidenceError::Kind::UnknownValue,
                          "value index " + std::to_string(value) + " out of range for '" + id +
                              "' (" + std::to_string(var.cardinality()) + " values)");
  }
}

EvidenceSet evidence_from_labels(const BeliefNetwork& net,
                                 const std::vector<std::pair<std::string, std::string>>& bindings) {
  EvidenceSet ev;
  for (const auto& [id, label] : bindings) {
    const auto& var = net.variables[net.index_of(id)];
    auto value = var.value_index(label);
    if (!value)
      throw EvidenceError(EvidenceError::Kind::UnknownValue,
                          "variable '" + id + "' has no value '" + label + "'");
    ev.set(id, *value);
  }
  return ev;
}

}  // namespace bnet
