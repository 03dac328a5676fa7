#include "bnet/engine.hpp"

#include <chrono>

namespace bnet {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

}  // namespace

InferenceSession::InferenceSession(std::shared_ptr<const CompiledNetwork> compiled,
                                   AbsorptionMode mode)
    : compiled_(std::move(compiled)), mode_(mode) {
  if (!compiled_) throw Error("inference session needs a compiled network");
  reset_from_template();
}

void InferenceSession::reset_from_template() {
  working_ = compiled_->forest;
  ++counters_.template_copies;
  clique_counters_.assign(working_.cliques.size(), CliqueCounters{});
  evidence_ = EvidenceSet{};
  p_evidence_ = 0.0;
  calibrated_ = false;
  pending_us_ = 0;
}

void InferenceSession::retract_all() {
  if (evidence_.empty() && !calibrated_ && counters_.cells_sent == 0 && counters_.checks == 0)
    return;
  reset_from_template();
}

std::size_t InferenceSession::restrict(PotentialTable& table, std::size_t var, std::size_t value) {
  const std::size_t scanned = mode_ == AbsorptionMode::Removal
                                  ? table.restrict_to(var, value)
                                  : table.zero_incompatible(var, value);
  counters_.checks += scanned;
  return scanned;
}

void InferenceSession::absorb_evidence(const EvidenceSet& evidence) {
  const auto& net = compiled_->network;
  check_evidence(net, evidence);
  for (const auto& [id, value] : evidence)
    if (auto cur = evidence_.get(id); cur && *cur != value)
      throw EvidenceError(EvidenceError::Kind::Contradiction,
                          "variable '" + id + "' is already instantiated to '" +
                              net.variables[net.index_of(id)].values[*cur] + "'");

  const auto start = Clock::now();
  bool changed = false;
  for (const auto& [id, value] : evidence) {
    if (evidence_.contains(id)) continue;
    const std::size_t var = net.index_of(id);
    for (auto& clique : working_.cliques)
      clique_counters_[clique.index].checks += restrict(clique.potential, var, value);
    for (std::size_t i = 0; i < working_.separators.size(); ++i)
      if (working_.parent[i]) restrict(working_.separators[i], var, value);
    evidence_.set(id, value);
    changed = true;
  }
  if (changed) calibrated_ = false;
  pending_us_ += micros_since(start);
}

void InferenceSession::send(std::size_t from, std::size_t to, std::size_t separator) {
  const auto& source = working_.cliques[from].potential;
  auto& target = working_.cliques[to].potential;
  auto& stored = working_.separators[separator];

  PotentialTable message = source.marginalize_onto(stored.scope());
  counters_.cells_sent += source.size() + target.size();
  clique_counters_[from].cells_marginalized += source.size();
  clique_counters_[to].cells_multiplied += target.size();

  target.multiply_ratio(message, stored);
  stored = std::move(message);
}

void InferenceSession::propagate() {
  const auto start = Clock::now();
  const std::size_t n = working_.cliques.size();

  // parent[i] < i, so descending order finishes every subtree before its
  // root and ascending order reaches parents first.
  for (std::size_t i = n; i-- > 0;)
    if (auto p = working_.parent[i]) send(i, *p, i);

  double mass = 1.0;
  for (std::size_t r : working_.roots) {
    const double tree_mass = working_.cliques[r].potential.sum();
    if (!(tree_mass > kImpossibleMass)) {
      calibrated_ = false;
      p_evidence_ = 0.0;
      throw ImpossibleEvidence("evidence has zero probability");
    }
    mass *= tree_mass;
  }
  p_evidence_ = mass;

  for (std::size_t i = 0; i < n; ++i)
    if (auto p = working_.parent[i]) send(*p, i, i);

  calibrated_ = true;
  last_update_us_ = pending_us_ + micros_since(start);
  pending_us_ = 0;
}

void InferenceSession::add_evidence_incremental(const EvidenceSet& more) {
  if (!calibrated_) throw Error("incremental update requires a calibrated session");
  absorb_evidence(more);
  if (!calibrated_) propagate();
}

std::vector<double> InferenceSession::marginal(std::size_t var) const {
  const auto& net = compiled_->network;
  if (var >= net.size()) throw EvidenceError(EvidenceError::Kind::UnknownVariable,
                                             "unknown variable index " + std::to_string(var));
  if (!calibrated_) throw Error("session is not calibrated; call propagate() first");

  const std::size_t k = net.variables[var].cardinality();
  std::vector<double> dist(k, 0.0);
  if (auto observed = evidence_.get(net.variables[var].id)) {
    dist[*observed] = 1.0;
    return dist;
  }

  const std::size_t scope[] = {var};
  const auto table = working_.cliques[working_.home[var]].potential.marginalize_onto(scope);
  const auto& values = table.allowed().front();
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    dist[values[i]] = table.cells()[i];
    total += table.cells()[i];
  }
  for (double& p : dist) p /= total;
  return dist;
}

std::vector<double> InferenceSession::marginal(std::string_view id) const {
  return marginal(compiled_->network.index_of(id));
}

double InferenceSession::evidence_probability() const {
  if (!calibrated_) throw Error("session is not calibrated; call propagate() first");
  return p_evidence_;
}

PosteriorReport InferenceSession::report() const {
  PosteriorReport out;
  out.evidence = evidence_;
  out.p_evidence = evidence_probability();
  for (std::size_t v = 0; v < compiled_->network.size(); ++v) out.posteriors.push_back(marginal(v));
  out.counters = counters_;
  out.elapsed_us = last_update_us_;
  return out;
}

PosteriorReport query(std::shared_ptr<const CompiledNetwork> compiled, const EvidenceSet& evidence,
                      AbsorptionMode mode) {
  const auto start = Clock::now();
  InferenceSession session(std::move(compiled), mode);
  session.absorb_evidence(evidence);
  session.propagate();
  auto report = session.report();
  report.elapsed_us = micros_since(start);
  return report;
}

std::uint64_t count_update_operations(std::span<const std::size_t> cardinalities,
                                      std::size_t observed, std::size_t children,
                                      AbsorptionMode mode) {
  std::uint64_t cells = 1;
  for (std::size_t k : cardinalities) cells *= k;
  const std::uint64_t neighbours = 1 + children;
  const std::uint64_t message_cells =
      mode == AbsorptionMode::Removal ? cells / cardinalities[observed] : cells;
  return cells + message_cells * neighbours;
}

}  // namespace bnet
