#include <gtest/gtest.h>

#include <set>
#include <string>

#include "test_support.hpp"
#include "tts/errors.hpp"
#include "tts/space.hpp"

namespace tts {
namespace {

using testing::open_of;
using testing::pts;

class GenealogySpace : public ::testing::Test {
 protected:
  TypedSpace s = builtin("genealogy5");
  TypeTerm t(const char* text) const { return parse_type_expr(text, s.context()); }
};

// Three points, opens {x} inside {x,y} sharing one type.
TypedSpace nested_equal_types() {
  auto ctx = make_context(Poset({"g"}, {}), {"x", "y", "z"});
  auto ty = [&](const char* e) { return parse_type_expr(e, ctx); };
  return TypedSpace(ctx, {{PointSet{}, TypeTerm::bottom(ctx)},
                          {PointSet{0b001}, ty("g&@x")},
                          {PointSet{0b011}, ty("g&@x")},
                          {PointSet{0b111}, ty("g|~@z")}});
}

TEST_F(GenealogySpace, TopologyHasTheAncestorRay) {
  EXPECT_EQ(s.open(0), PointSet{});
  EXPECT_TRUE(s.sigma(0).is_bottom());
  EXPECT_EQ(s.sigma(open_of(s, "B,S,H,C")), t("anc & @W"));
  EXPECT_TRUE(s.find_open(s.all_points()).has_value());
}

TEST_F(GenealogySpace, Validates) {
  ValidationReport r = validate_type_mapping(s);
  EXPECT_TRUE(r.ok()) << r.summary(s);
  EXPECT_TRUE(is_strictly_typed(s).strict);
}

TEST_F(GenealogySpace, InjectedTopIsReported) {
  TypedSpace bad = s.with_sigma(open_of(s, "B,S,H,C"), TypeTerm::top(s.context()));
  ValidationReport r = validate_type_mapping(bad);
  ASSERT_FALSE(r.ok());
  bool cited = false;
  for (const Finding& f : r.failures) cited = cited || f.condition == "never-top";
  EXPECT_TRUE(cited) << r.summary(bad);
}

TEST_F(GenealogySpace, InjectedTypeOnEmptySetIsReported) {
  TypedSpace bad = s.with_sigma(0, t("anc"));
  ValidationReport r = validate_type_mapping(bad);
  ASSERT_FALSE(r.ok());
  bool cited = false;
  for (const Finding& f : r.failures) cited = cited || f.condition == "empty-iff-bottom";
  EXPECT_TRUE(cited) << r.summary(bad);
}

TEST_F(GenealogySpace, Forcing) {
  EXPECT_TRUE(forces(s, t("anc & @W"), s.require_point("C")));
  EXPECT_FALSE(forces(s, t("desc"), s.require_point("W")));
  EXPECT_FALSE(forces(s, TypeTerm::bottom(s.context()), s.require_point("B")));
}

TEST_F(GenealogySpace, RealizedTypesMatchDirectCount) {
  RealizedTypes r = realized_types(s);
  std::set<std::string> distinct;
  for (OpenId u = 1; u < s.open_count(); ++u) distinct.insert(to_string(s.sigma(u)));
  EXPECT_EQ(r.types.size(), distinct.size());
  EXPECT_EQ(r.types.size(), s.open_count() - 1);
  for (std::size_t i = 0; i < r.types.size(); ++i) {
    for (std::size_t j = 0; j < r.types.size(); ++j) EXPECT_EQ(r.leq[i][j], leq(r.types[i], r.types[j]));
  }
}

TEST_F(GenealogySpace, StrictifyKeepsStrictSpacesStrict) {
  TypedSpace out = strictify(s);
  EXPECT_TRUE(validate_type_mapping(out).ok());
  EXPECT_TRUE(is_strictly_typed(out).strict);
  EXPECT_EQ(out.sigma(out.open_count() - 1), s.sigma(s.open_count() - 1));
}

TEST(Strictness, NestedEqualTypesAreCaught) {
  TypedSpace s = nested_equal_types();
  ASSERT_TRUE(validate_type_mapping(s).ok());
  StrictnessResult r = is_strictly_typed(s);
  ASSERT_FALSE(r.strict);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(s.open(r.counterexample->first), PointSet{0b001});
  EXPECT_EQ(s.open(r.counterexample->second), PointSet{0b011});

  TypedSpace fixed = strictify(s);
  EXPECT_TRUE(is_strictly_typed(fixed).strict);
  EXPECT_FALSE(fixed.sigma(1) == fixed.sigma(2));
  EXPECT_EQ(fixed.sigma(3), s.sigma(3));
}

TEST(GenerateTopology, Degenerate) {
  auto ctx = make_context(Poset({"anc"}, {}), {"x", "y"});
  EXPECT_THROW(generate_topology(ctx, {}), ValidationError);

  TypedSpace one = generate_topology(ctx, {{"all", PointSet{0b11}, TypeTerm::generator(ctx, "anc")}});
  ASSERT_EQ(one.open_count(), 2U);
  EXPECT_EQ(one.sigma(1), TypeTerm::generator(ctx, "anc"));
  EXPECT_EQ(realized_types(one).types.size(), 1U);
}

TEST(GenerateTopology, ClosedUnderUnionAndIntersection) {
  for (const std::string& name : builtin_names()) {
    TypedSpace s = builtin(name);
    for (PointSet a : s.opens()) {
      for (PointSet b : s.opens()) {
        EXPECT_TRUE(s.find_open(a | b).has_value()) << name;
        EXPECT_TRUE(s.find_open(a & b).has_value()) << name;
      }
    }
    EXPECT_TRUE(validate_type_mapping(s).ok()) << name;
  }
}

TEST(PointLists, ParseAndFormat) {
  TypedSpace s = builtin("street5");
  EXPECT_EQ(format_set(s, pts(s, "r3, r1")), "{r1,r3}");
  EXPECT_THROW(pts(s, "r9"), UnknownPointError);
}

}  // namespace
}  // namespace tts
