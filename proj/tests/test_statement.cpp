#include <gtest/gtest.h>

#include "dct/graph_io.hpp"
#include "dct/statement.hpp"

using namespace dct;

namespace {

Statement seed(std::string id = "0", std::string text = "Paris is the capital of France.") {
  return {std::move(id), std::move(text), StatementKind::Seed, std::nullopt, Origin::External, std::nullopt};
}

Statement child(std::string id, StatementKind kind, std::string parent = "0") {
  return {std::move(id), "child " + id, kind, std::move(parent), Origin::LmSampled, 0.5};
}

}  // namespace

TEST(ValidateGraph, MinimalGraphIsValid) {
  DeductionGraph g{seed(), {}, {}, false};
  EXPECT_TRUE(validate_graph(g).empty());
}

TEST(ValidateGraph, WrongParentNamesTheChild) {
  DeductionGraph g{seed(), {child("0.1", StatementKind::Implication, "7")}, {}, false};
  const auto v = validate_graph(g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_NE(v[0].find("0.1"), std::string::npos);
}

TEST(ValidateGraph, DuplicateIdAcrossSeedAndChild) {
  DeductionGraph g{seed(), {}, {child("0", StatementKind::Contradiction)}, false};
  const auto v = validate_graph(g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_NE(v[0].find("duplicate"), std::string::npos);
}

TEST(ValidateGraph, KindMismatchAndBlankTextAndPriorRange) {
  DeductionGraph g{seed(), {child("0.1", StatementKind::Contradiction)}, {}, false};
  EXPECT_FALSE(validate_graph(g).empty());

  g = DeductionGraph{seed("0", "   "), {}, {}, false};
  EXPECT_FALSE(validate_graph(g).empty());

  auto c = child("0.1", StatementKind::Implication);
  c.truth_prior = 1.5;
  g = DeductionGraph{seed(), {c}, {}, false};
  EXPECT_FALSE(validate_graph(g).empty());
}

TEST(ValidateGraph, ParentPresenceMatchesKind) {
  auto s = seed();
  s.parent = "x";
  EXPECT_FALSE(validate_statement(s).empty());
  auto c = child("0.1", StatementKind::Implication);
  c.parent.reset();
  EXPECT_FALSE(validate_statement(c).empty());
  auto r = child("r", StatementKind::Related);
  r.parent.reset();
  EXPECT_TRUE(validate_statement(r).empty());
}

TEST(ValidateGraph, IsPure) {
  DeductionGraph g{seed(), {child("0.1", StatementKind::Implication, "9")}, {child("0.1", StatementKind::Contradiction)},
                   false};
  EXPECT_EQ(validate_graph(g), validate_graph(g));
}

TEST(ValidateGraph, ChildMayRepeatSeedText) {
  auto c = child("0.1", StatementKind::Implication);
  c.text = seed().text;
  DeductionGraph g{seed(), {c}, {}, false};
  EXPECT_TRUE(validate_graph(g).empty());
}

TEST(TruthAssignment, CoverageIsExact) {
  DeductionGraph g{seed(), {child("0.1", StatementKind::Implication)}, {child("0.2", StatementKind::Contradiction)},
                   false};
  auto t = TruthAssignment::from_ordered(g, {true, true, false});
  EXPECT_TRUE(t.covers(g));
  EXPECT_EQ(t.ordered(g), (std::vector<bool>{true, true, false}));
  t.set("extra", true);
  EXPECT_FALSE(t.covers(g));
  EXPECT_FALSE(TruthAssignment({{"0", true}}).covers(g));
}

TEST(GraphJson, RoundTripIsByteIdentical) {
  auto imp = child("0.1", StatementKind::Implication);
  auto con = child("0.2", StatementKind::Contradiction);
  con.truth_prior.reset();
  DeductionGraph g{seed(), {imp}, {con}, true};
  const std::string once = to_json(g).dump();
  const DeductionGraph back = graph_from_json(ordered_json::parse(once));
  EXPECT_EQ(back, g);
  EXPECT_TRUE(validate_graph(back).empty());
  EXPECT_EQ(to_json(back).dump(), once);
}

TEST(Ids, ChildIdScheme) {
  EXPECT_EQ(child_id("3", 2), "3.2");
  EXPECT_EQ(trim("  a b \n"), "a b");
}
