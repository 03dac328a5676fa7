#include <gtest/gtest.h>

#include "bnet/generate.hpp"
#include "bnet/network.hpp"
#include "test_support.hpp"

namespace bnet {
namespace {

using testing::fixture;
using testing::make_network;

bool has_issue(const ValidationReport& report, IssueKind kind) {
  return std::any_of(report.begin(), report.end(),
                     [&](const ValidationIssue& i) { return i.kind == kind; });
}

TEST(Validate, FixtureAbIsClean) { EXPECT_TRUE(validate(fixture("ab")).empty()); }

TEST(Validate, TwoCycleListsBothMembers) {
  auto net = make_network({{"A", 2, {"B"}, {}}, {"B", 2, {"A"}, {}}});
  auto report = validate(net);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, IssueKind::Cycle);
  EXPECT_EQ(report[0].members, (std::vector<std::string>{"A", "B"}));
}

TEST(Validate, NegativeEntryReportsCoordinates) {
  auto net = make_network({{"A", 2, {}, {0.3, 0.7}}, {"B", 2, {"A"}, {0.9, 0.1, -0.1, 1.1}}});
  auto report = validate(net);
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report[0].kind, IssueKind::ProbabilityRange);
  EXPECT_EQ(report[0].variable, "B");
  EXPECT_EQ(report[0].coordinates, (std::vector<std::size_t>{1, 0}));
  // Both out-of-range entries of row 1 are listed.
  EXPECT_EQ(std::count_if(report.begin(), report.end(),
                          [](const auto& i) { return i.kind == IssueKind::ProbabilityRange; }),
            2);
}

TEST(Validate, RowSumNamesVariableAndRow) {
  auto net = fixture("ab");
  net.cpts[1].table = {0.9, 0.2, 0.2, 0.8};
  auto report = validate(net);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, IssueKind::RowSum);
  EXPECT_EQ(report[0].variable, "B");
  EXPECT_EQ(report[0].coordinates, (std::vector<std::size_t>{0}));
}

TEST(Validate, ListsEveryViolation) {
  BeliefNetwork net;
  net.add({"A", "A", {"x"}}, {}, {1.0});
  net.add({"A", "A2", {"y", "y"}}, {"A", "A"}, {0.5, 0.5});
  net.add({"C", "C", {"c0", "c1"}}, {"C", "Z"}, {0.5, 0.5});
  net.add({"has space", "D", {"d0", "d1"}}, {}, {0.5, 0.5});
  auto report = validate(net);
  for (auto kind : {IssueKind::TooFewValues, IssueKind::DuplicateId, IssueKind::DuplicateValueLabel,
                    IssueKind::DuplicateParent, IssueKind::SelfLoop, IssueKind::UnknownParent,
                    IssueKind::InvalidId})
    EXPECT_TRUE(has_issue(report, kind)) << to_string(kind);
}

TEST(Validate, CptLengthMismatch) {
  auto net = make_network({{"A", 2, {}, {0.3, 0.7}}, {"B", 3, {"A"}, {0.2, 0.3, 0.5}}});
  EXPECT_TRUE(has_issue(validate(net), IssueKind::CptLength));
}

TEST(Validate, RowSumToleranceIsOneInABillion) {
  auto net = make_network({{"A", 2, {}, {0.3, 0.7 + 5e-10}}});
  EXPECT_TRUE(validate(net).empty());
  net.cpts[0].table[1] = 0.7 + 5e-9;
  EXPECT_TRUE(has_issue(validate(net), IssueKind::RowSum));
}

TEST(TopologicalOrder, Fixtures) {
  EXPECT_EQ(topological_order(fixture("ab")), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(topological_order(fixture("collider")), (std::vector<std::string>{"A", "B", "C"}));
  auto diamond = make_network(
      {{"A", 2, {}, {}}, {"B", 2, {"A"}, {}}, {"C", 2, {"A"}, {}}, {"D", 2, {"B", "C"}, {}}});
  EXPECT_EQ(topological_order(diamond), (std::vector<std::string>{"A", "B", "C", "D"}));
}

TEST(TopologicalOrder, ChildDeclaredFirst) {
  auto net = make_network({{"C", 2, {"B"}, {}}, {"B", 2, {"A"}, {}}, {"A", 2, {}, {}}});
  EXPECT_EQ(topological_order(net), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(TopologicalOrder, CycleThrows) {
  auto net = make_network({{"A", 2, {"B"}, {}}, {"B", 2, {"A"}, {}}, {"C", 2, {}, {}}});
  EXPECT_THROW(topological_order(net), CycleError);
}

TEST(TopologicalOrder, ParentsPrecedeChildrenOnRandomNetworks) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto net = generate_network({10, 15, 2, 3, 0, seed});
    // Shuffle declaration order so it is no longer topological.
    std::reverse(net.variables.begin(), net.variables.end());
    std::reverse(net.cpts.begin(), net.cpts.end());
    const auto order = topological_indices(net);
    std::vector<std::size_t> rank(net.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    for (std::size_t v = 0; v < net.size(); ++v)
      for (std::size_t p : net.parent_indices(v)) EXPECT_LT(rank[p], rank[v]);
  }
}

TEST(Merge, DisjointUnion) {
  auto merged = merge_networks(fixture("coin"), fixture("ab"));
  EXPECT_EQ(merged.size(), 3u);
  EXPECT_EQ(merged.arc_count(), 1u);
  EXPECT_EQ(merged.variables[1].id, "A");
  EXPECT_EQ(merged.variables[2].id, "B");
}

TEST(Merge, CollisionsAreSuffixed) {
  auto merged = merge_networks(fixture("ab"), fixture("ab"));
  ASSERT_EQ(merged.size(), 4u);
  EXPECT_EQ(merged.arc_count(), 2u);
  EXPECT_EQ(merged.variables[2].id, "A_2");
  EXPECT_EQ(merged.variables[3].id, "B_2");
  EXPECT_EQ(merged.cpts[3].parents, (std::vector<std::string>{"A_2"}));
}

TEST(Merge, SuffixSkipsTakenNames) {
  auto once = merge_networks(fixture("ab"), fixture("ab"));
  auto twice = merge_networks(once, fixture("ab"));
  EXPECT_EQ(twice.variables[4].id, "A_3");
  EXPECT_EQ(twice.cpts[5].parents, (std::vector<std::string>{"A_3"}));
}

TEST(Merge, EmptyBaseIsIdentity) {
  EXPECT_EQ(merge_networks(BeliefNetwork{}, fixture("ab")), fixture("ab"));
}

TEST(Merge, ResultAlwaysValidAndSizesAdd) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto a = generate_network({5, 6, 2, 3, 0, seed});
    auto b = generate_network({4, 4, 2, 3, 0, seed + 100});
    auto merged = merge_networks(a, b);
    EXPECT_TRUE(validate(merged).empty());
    EXPECT_EQ(merged.size(), a.size() + b.size());
  }
}

TEST(Evidence, ContradictionThrows) {
  EvidenceSet ev{{"A", 0}};
  EXPECT_NO_THROW(ev.set("A", 0));
  EXPECT_THROW(ev.set("A", 1), EvidenceError);
}

TEST(Evidence, LabelsResolve) {
  auto net = fixture("ab");
  auto ev = evidence_from_labels(net, {{"B", "b1"}});
  EXPECT_EQ(ev.get("B"), 1u);
  EXPECT_THROW(evidence_from_labels(net, {{"B", "b9"}}), EvidenceError);
  EXPECT_THROW(evidence_from_labels(net, {{"Q", "b0"}}), EvidenceError);
  EXPECT_THROW(check_evidence(net, EvidenceSet{{"A", 2}}), EvidenceError);
}

}  // namespace
}  // namespace bnet
