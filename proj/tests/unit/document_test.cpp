#include <gtest/gtest.h>

#include "bnet/document.hpp"
#include "bnet/generate.hpp"
#include "test_support.hpp"

namespace bnet {
namespace {

using testing::fixture;
using testing::fixture_path;

TEST(Parse, CoinFixture) {
  auto net = fixture("coin");
  ASSERT_EQ(net.size(), 1u);
  EXPECT_EQ(net.arc_count(), 0u);
  EXPECT_EQ(net.variables[0].values, (std::vector<std::string>{"h", "t"}));
  EXPECT_EQ(net.cpts[0].table, (std::vector<double>{0.6, 0.4}));
}

TEST(Parse, AbFixture) {
  auto net = fixture("ab");
  EXPECT_EQ(net.size(), 2u);
  EXPECT_EQ(net.arc_count(), 1u);
  EXPECT_EQ(net.cpts[1].parents, (std::vector<std::string>{"A"}));
}

TEST(Parse, RowSumErrorNamesVariableAndRow) {
  std::string doc = read_file(fixture_path("ab"));
  const std::string row = "[0.9, 0.1, 0.2, 0.8]";
  doc.replace(doc.find(row), row.size(), "[0.9, 0.2, 0.2, 0.8]");
  try {
    parse_network(doc);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].kind, IssueKind::RowSum);
    EXPECT_EQ(e.issues()[0].variable, "B");
    EXPECT_EQ(e.issues()[0].coordinates, (std::vector<std::size_t>{0}));
  }
}

TEST(Parse, SyntaxErrorReportsPosition) {
  const std::string doc = "{\"name\": \"x\",\n  \"nodes\": [,]\n}";
  try {
    parse_network(doc);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 13u);
  }
}

TEST(Parse, SchemaErrors) {
  EXPECT_THROW(parse_network("[]"), ParseError);
  EXPECT_THROW(parse_network(R"({"name": "x", "nodes": [], "extra": 1})"), ParseError);
  EXPECT_THROW(parse_network(R"({"name": "x", "nodes": [{"id": "A", "values": ["a","b"], "cpt": [0.5, 0.5], "colour": 1}]})"),
               ParseError);
  EXPECT_THROW(parse_network(R"({"name": "x", "nodes": [{"id": "A", "values": ["a","b"], "cpt": ["0.5", 0.5]}]})"),
               ParseError);
  EXPECT_THROW(parse_network(R"({"nodes": []})"), ParseError);
}

TEST(Parse, UndeclaredParent) {
  const char* doc = R"({"name": "x", "nodes": [
    {"id": "A", "values": ["a", "b"], "parents": ["Q"], "cpt": [0.5, 0.5]}]})";
  try {
    parse_network(doc);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.issues()[0].kind, IssueKind::UnknownParent);
  }
}

TEST(Parse, CycleDetected) {
  const char* doc = R"({"name": "x", "nodes": [
    {"id": "A", "values": ["a0", "a1"], "parents": ["B"], "cpt": [0.5, 0.5, 0.5, 0.5]},
    {"id": "B", "values": ["b0", "b1"], "parents": ["A"], "cpt": [0.5, 0.5, 0.5, 0.5]}]})";
  try {
    parse_network(doc);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.issues()[0].kind, IssueKind::Cycle);
  }
}

TEST(Parse, CptLengthMismatch) {
  const char* doc = R"({"name": "x", "nodes": [
    {"id": "A", "values": ["a0", "a1"], "cpt": [0.5, 0.25, 0.25]}]})";
  EXPECT_THROW(parse_network(doc), ValidationError);
}

TEST(Serialize, CoinIsByteIdenticalToFixture) {
  const std::string text = read_file(fixture_path("coin"));
  EXPECT_EQ(serialize_network(parse_network(text)), text);
}

TEST(Serialize, FixturesAreCanonical) {
  for (const char* name : {"ab", "collider", "asia", "alarm"}) {
    const std::string text = read_file(fixture_path(name));
    EXPECT_EQ(serialize_network(parse_network(text)), text) << name;
  }
}

TEST(Serialize, AsiaHasEightNodeRecords) {
  const std::string text = serialize_network(fixture("asia"));
  std::size_t records = 0;
  for (auto pos = text.find("{\"id\""); pos != std::string::npos; pos = text.find("{\"id\"", pos + 1))
    ++records;
  EXPECT_EQ(records, 8u);
  std::size_t cpts = 0;
  for (auto pos = text.find("\"cpt\""); pos != std::string::npos; pos = text.find("\"cpt\"", pos + 1))
    ++cpts;
  EXPECT_EQ(cpts, 8u);
}

TEST(Serialize, LayoutSidecarSurvives) {
  auto net = fixture("ab");
  net.layout = R"({"A":{"x":10,"y":20}})";
  auto again = parse_network(serialize_network(net));
  EXPECT_EQ(again, net);
}

TEST(Serialize, RoundTripRandomNetworks) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t n = 2 + seed % 10;
    auto net = generate_network({n, seed % n, 2, 4, 3, seed});
    auto again = parse_network(serialize_network(net));
    EXPECT_EQ(again, net) << "seed " << seed;
  }
}

TEST(Serialize, FormatDoubleIsShortestExact) {
  EXPECT_EQ(format_double(0.6), "0.6");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.0), "0");
  const double awkward = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(awkward)), awkward);
}

TEST(Dot, OneEdgePerArc) {
  const auto dot = network_to_dot(fixture("collider"));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"A\" -> \"C\";"), std::string::npos);
  EXPECT_NE(dot.find("\"B\" -> \"C\";"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 2);
}

}  // namespace
}  // namespace bnet
