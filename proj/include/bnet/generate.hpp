#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bnet/network.hpp"

namespace bnet {

struct GeneratorOptions {
  std::size_t nodes = 8;
  std::size_t arcs = 10;
  std::size_t min_card = 2;
  std::size_t max_card = 3;
  // 0 means unbounded.
  std::size_t max_parents = 0;
  std::uint64_t seed = 1;
};

// Random valid network. Parents are drawn only from earlier declaration
// positions, so the result is acyclic by construction. CPT entries are
// strictly positive. Throws Error when `arcs` cannot be placed.
BeliefNetwork generate_network(const GeneratorOptions& options);

// Uniform integer in [0, n) and double in [0, 1) from a 64-bit engine,
// identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);
double uniform_unit(std::mt19937_64& rng);

// Full assignment drawn by ancestral sampling.
std::vector<std::size_t> forward_sample(const BeliefNetwork& net, std::mt19937_64& rng);

// Evidence on `count` distinct variables taken from one forward sample, so
// P(evidence) > 0.
EvidenceSet sample_evidence(const BeliefNetwork& net, std::size_t count, std::mt19937_64& rng);

}  // namespace bnet
