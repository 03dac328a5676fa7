#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bnet/generate.hpp"
#include "bnet/oracle.hpp"
#include "test_support.hpp"

namespace bnet {
namespace {

using testing::fixture;
using testing::make_network;

TEST(Joint, Coin) { EXPECT_EQ(joint(fixture("coin")).cells, (std::vector<double>{0.6, 0.4})); }

TEST(Joint, Ab) {
  const auto table = joint(fixture("ab"));
  const std::vector<double> expected{0.27, 0.03, 0.14, 0.56};
  ASSERT_EQ(table.cells.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(table.cells[i], expected[i], 1e-15);
}

TEST(Joint, OrderIsTopological) {
  auto net = make_network({{"C", 2, {"B"}, {}}, {"B", 2, {}, {}}});
  EXPECT_EQ(joint(net).order, (std::vector<std::size_t>{1, 0}));
}

TEST(Joint, SumsToOne) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto table = joint(generate_network({9, 14, 2, 4, 0, seed}));
    EXPECT_NEAR(std::accumulate(table.cells.begin(), table.cells.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(Joint, RecoversEveryCptRow) {
  auto net = generate_network({6, 8, 2, 3, 0, 11});
  const auto table = joint(net);
  std::vector<std::size_t> position(net.size());
  for (std::size_t i = 0; i < table.order.size(); ++i) position[table.order[i]] = i;
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto parents = net.parent_indices(v);
    const std::size_t k = net.variables[v].cardinality();
    std::vector<double> family(net.cpts[v].table.size(), 0.0);
    for (std::size_t cell = 0; cell < table.cells.size(); ++cell) {
      std::vector<std::size_t> x(net.size());
      std::size_t rest = cell;
      for (std::size_t p = table.order.size(); p-- > 0;) {
        x[table.order[p]] = rest % table.cardinalities[p];
        rest /= table.cardinalities[p];
      }
      std::size_t row = 0;
      for (std::size_t q : parents) row = row * net.variables[q].cardinality() + x[q];
      family[row * k + x[v]] += table.cells[cell];
    }
    for (std::size_t row = 0; row * k < family.size(); ++row) {
      double mass = 0.0;
      for (std::size_t j = 0; j < k; ++j) mass += family[row * k + j];
      for (std::size_t j = 0; j < k; ++j)
        EXPECT_NEAR(family[row * k + j] / mass, net.cpts[v].table[row * k + j], 1e-9);
    }
  }
}

TEST(Joint, CapExceeded) {
  EXPECT_THROW(joint(fixture("alarm")), CapExceeded);
  EXPECT_THROW(joint(fixture("ab"), 3), CapExceeded);
  EXPECT_NO_THROW(joint(fixture("ab"), 4));
}

TEST(Posterior, AbGivenB) {
  const auto r = oracle_posterior(fixture("ab"), EvidenceSet{{"B", 0}}, "A");
  EXPECT_NEAR(r.distribution[0], 0.658537, 1e-6);
  EXPECT_NEAR(r.distribution[1], 0.341463, 1e-6);
  EXPECT_NEAR(r.p_evidence, 0.41, 1e-15);
}

TEST(Posterior, AbPrior) {
  const auto r = oracle_posterior(fixture("ab"), EvidenceSet{}, "B");
  EXPECT_NEAR(r.distribution[0], 0.41, 1e-15);
  EXPECT_NEAR(r.distribution[1], 0.59, 1e-15);
  EXPECT_EQ(r.p_evidence, 1.0);
}

TEST(Posterior, ImpossibleEvidence) {
  auto net = make_network({{"A", 2, {}, {1.0, 0.0}}, {"B", 2, {"A"}, {}}});
  EXPECT_THROW(oracle_posterior(net, EvidenceSet{{"A", 1}}, "B"), ImpossibleEvidence);
  EXPECT_THROW(oracle_posteriors(net, EvidenceSet{{"A", 1}}), ImpossibleEvidence);
}

TEST(Posterior, AllVariablesAgreeWithSingle) {
  auto net = fixture("asia");
  const EvidenceSet ev{{"Dyspnea", 0}};
  const auto all = oracle_posteriors(net, ev);
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (ev.contains(net.variables[v].id)) {
      EXPECT_EQ(all.posteriors[v], (std::vector<double>{1.0, 0.0}));
      continue;
    }
    const auto one = oracle_posterior(net, ev, net.variables[v].id);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(all.posteriors[v][k], one.distribution[k], 1e-15);
  }
}

}  // namespace
}  // namespace bnet
