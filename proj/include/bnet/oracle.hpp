#pragma once

// Brute-force enumeration of the full joint distribution. Ground truth for
// small networks; deliberately naive.

#include <cstddef>
#include <string_view>
#include <vector>

#include "bnet/network.hpp"

namespace bnet {

inline constexpr std::size_t kDefaultOracleCap = std::size_t{1} << 24;

struct JointTable {
  // Variable indices in topological order; the last one varies fastest.
  std::vector<std::size_t> order;
  std::vector<std::size_t> cardinalities;
  std::vector<double> cells;
};

// Throws CapExceeded when the state space has more than `cap` cells.
JointTable joint(const BeliefNetwork& net, std::size_t cap = kDefaultOracleCap);

struct OraclePosterior {
  std::vector<double> distribution;
  double p_evidence = 0.0;
};

// Throws ImpossibleEvidence when P(evidence) == 0.
OraclePosterior oracle_posterior(const BeliefNetwork& net, const EvidenceSet& evidence,
                                 std::string_view var, std::size_t cap = kDefaultOracleCap);

struct OracleReport {
  // Declaration order; observed variables get degenerate distributions.
  std::vector<std::vector<double>> posteriors;
  double p_evidence = 0.0;
};

OracleReport oracle_posteriors(const BeliefNetwork& net, const EvidenceSet& evidence,
                               std::size_t cap = kDefaultOracleCap);

}  // namespace bnet
