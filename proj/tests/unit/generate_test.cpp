#include <gtest/gtest.h>

#include "bnet/document.hpp"
#include "bnet/generate.hpp"
#include "test_support.hpp"

namespace bnet {
namespace {

TEST(Generate, ShapeFollowsOptions) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto net = generate_network({12, 18, 2, 4, 3, seed});
    EXPECT_TRUE(validate(net).empty());
    EXPECT_EQ(net.size(), 12u);
    EXPECT_EQ(net.arc_count(), 18u);
    for (std::size_t v = 0; v < net.size(); ++v) {
      EXPECT_GE(net.variables[v].cardinality(), 2u);
      EXPECT_LE(net.variables[v].cardinality(), 4u);
      EXPECT_LE(net.cpts[v].parents.size(), 3u);
      for (std::size_t p : net.parent_indices(v)) EXPECT_LT(p, v);
      for (double x : net.cpts[v].table) EXPECT_GT(x, 0.0);
    }
  }
}

TEST(Generate, SameSeedSameDocument) {
  const GeneratorOptions options{10, 12, 2, 3, 0, 99};
  EXPECT_EQ(serialize_network(generate_network(options)), serialize_network(generate_network(options)));
  auto other = options;
  other.seed = 100;
  EXPECT_NE(serialize_network(generate_network(options)), serialize_network(generate_network(other)));
}

TEST(Generate, TooManyArcsRejected) {
  EXPECT_THROW(generate_network({3, 4, 2, 2, 0, 1}), Error);
  EXPECT_THROW(generate_network({4, 5, 2, 2, 1, 1}), Error);
  EXPECT_NO_THROW(generate_network({3, 3, 2, 2, 0, 1}));
}

TEST(Uniform, RangesAndDeterminism) {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto k = uniform_index(a, 7);
    EXPECT_LT(k, 7u);
    EXPECT_EQ(k, uniform_index(b, 7));
    const double u = uniform_unit(a);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    uniform_unit(b);
  }
}

TEST(Sample, NeverPicksZeroProbabilityValue) {
  auto net = testing::make_network({{"A", 3, {}, {0.0, 1.0, 0.0}}, {"B", 2, {"A"}, {1, 0, 0, 1, 1, 0}}});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(forward_sample(net, rng), (std::vector<std::size_t>{1, 1}));
}

TEST(Sample, EvidenceHasRequestedSize) {
  auto net = generate_network({8, 10, 2, 3, 0, 3});
  std::mt19937_64 rng(2);
  for (std::size_t count = 0; count <= 8; ++count) EXPECT_EQ(sample_evidence(net, count, rng).size(), count);
}

}  // namespace
}  // namespace bnet
