#pragma once

// Evidence absorption and two-phase propagation over a compiled junction
// forest.
//
// Evidence is absorbed by removal: cells incompatible with an observation are
// deleted from every clique and separator table that mentions the observed
// variable, so later messages are built from smaller tables. A zeroing mode,
// which keeps table shapes and writes zeros instead, exists for comparison
// and counter cross-checks.
//
// Sessions keep the calibrated working forest between updates; new evidence
// restricts it in place and re-propagates without copying the template again.

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "bnet/compiler.hpp"
#include "bnet/network.hpp"

namespace bnet {

enum class AbsorptionMode { Removal, Zeroing };

// Root mass at or below this is treated as impossible evidence.
inline constexpr double kImpossibleMass = 1e-300;

struct OperationCounters {
  // One per cell scanned while restricting a table.
  std::uint64_t checks = 0;
  // Per message: sender cells marginalized plus receiver cells multiplied.
  std::uint64_t cells_sent = 0;
  // Number of times the working forest was copied from the template.
  std::uint64_t template_copies = 0;

  bool operator==(const OperationCounters&) const = default;
};

// Work attributable to a single clique.
struct CliqueCounters {
  std::uint64_t checks = 0;
  // Cells of this clique scanned while building its outgoing messages.
  std::uint64_t cells_marginalized = 0;
  // Cells of this clique updated by incoming messages.
  std::uint64_t cells_multiplied = 0;

  // Restriction plus outgoing messages, the cost of updating this clique.
  std::uint64_t update_steps() const { return checks + cells_marginalized; }
};

struct PosteriorReport {
  EvidenceSet evidence;
  double p_evidence = 0.0;
  // One normalized distribution per variable, in declaration order.
  std::vector<std::vector<double>> posteriors;
  OperationCounters counters;
  std::int64_t elapsed_us = 0;
};

class InferenceSession {
 public:
  explicit InferenceSession(std::shared_ptr<const CompiledNetwork> compiled,
                            AbsorptionMode mode = AbsorptionMode::Removal);

  // Restricts the working forest to `evidence`. Variables already observed
  // with the same value are skipped. Throws EvidenceError on unknown ids,
  // out-of-range values or contradiction, leaving the session untouched.
  void absorb_evidence(const EvidenceSet& evidence);

  // Collect toward each root, then distribute. Throws ImpossibleEvidence when
  // some tree has no remaining mass.
  void propagate();

  // Restrict the calibrated forest further and re-propagate.
  void add_evidence_incremental(const EvidenceSet& more);

  // Back to the template with no evidence (uncalibrated).
  void retract_all();

  bool calibrated() const { return calibrated_; }

  // Normalized posterior of one variable; requires calibration.
  std::vector<double> marginal(std::size_t var) const;
  std::vector<double> marginal(std::string_view id) const;

  // P(evidence) from the root masses of the last collect phase.
  double evidence_probability() const;

  PosteriorReport report() const;

  const CompiledNetwork& compiled() const { return *compiled_; }
  const EvidenceSet& evidence() const { return evidence_; }
  AbsorptionMode mode() const { return mode_; }
  const OperationCounters& counters() const { return counters_; }
  const CliqueCounters& clique_counters(std::size_t clique) const {
    return clique_counters_[clique];
  }
  const CliqueForest& working_forest() const { return working_; }
  std::size_t working_cells() const { return working_.total_cells(); }

 private:
  void reset_from_template();
  std::size_t restrict(PotentialTable& table, std::size_t var, std::size_t value);
  void send(std::size_t from, std::size_t to, std::size_t separator);

  std::shared_ptr<const CompiledNetwork> compiled_;
  AbsorptionMode mode_;
  CliqueForest working_;
  EvidenceSet evidence_;
  OperationCounters counters_;
  std::vector<CliqueCounters> clique_counters_;
  double p_evidence_ = 0.0;
  bool calibrated_ = false;
  std::int64_t pending_us_ = 0;
  std::int64_t last_update_us_ = 0;
};

// Fresh session, absorb, propagate, and read every posterior.
PosteriorReport query(std::shared_ptr<const CompiledNetwork> compiled, const EvidenceSet& evidence,
                      AbsorptionMode mode = AbsorptionMode::Removal);

// Analytic cost of updating one clique that has a parent and `children`
// children after observing the variable at position `observed`:
// restriction scan plus one message per neighbour built from the clique.
std::uint64_t count_update_operations(std::span<const std::size_t> cardinalities,
                                      std::size_t observed, std::size_t children,
                                      AbsorptionMode mode);

}  // namespace bnet
