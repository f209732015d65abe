#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tts/closure.hpp"
#include "tts/json_io.hpp"
#include "tts/oracle.hpp"

namespace tts {
namespace {

using testing::kGenealogyAnc;
using testing::kStreetRight;
using testing::pts;

class StreetClosure : public ::testing::Test {
 protected:
  TypedSpace s = builtin("street5");
  ChainNeighborhoods n{s, parse_chain(kStreetRight, s.context())};
  PointIndex p(const char* id) const { return s.require_point(id); }
};

TEST_F(StreetClosure, LeftNeighborsJoinTheClosure) {
  EXPECT_EQ(c_closure(n, pts(s, "r3")).closure, pts(s, "r1,r2,r3"));
  EXPECT_EQ(c_closure(n, PointSet{}).closure, e_c(n));
}

TEST_F(StreetClosure, ExceptionalSetAndClasses) {
  EXPECT_EQ(e_c(n), pts(s, "r1"));
  EXPECT_EQ(equiv_classes(n), (std::vector<PointSet>{pts(s, "r2"), pts(s, "r3"), pts(s, "r4"), pts(s, "r5")}));
}

TEST_F(StreetClosure, Density) {
  EXPECT_TRUE(is_c_dense(n, pts(s, "r1,r5"), s.all_points()));
  EXPECT_FALSE(is_c_dense(n, pts(s, "r2"), s.all_points()));
  EXPECT_TRUE(is_c_dense(n, pts(s, "r2,r4"), pts(s, "r2,r4")));
  EXPECT_THROW(is_c_dense(n, pts(s, "r1"), pts(s, "r2")), PreconditionError);

  DensityReport d = min_c_dense(n, OracleBudget{});
  EXPECT_EQ(d.density, 2U);
  EXPECT_EQ(d.witness, pts(s, "r1,r5"));
  EXPECT_TRUE(d.oracle_checked);
}

TEST_F(StreetClosure, EquivalenceConditions) {
  EXPECT_EQ(closure_equivalence_check(n, p("r2"), p("r3"), OracleBudget{}), (std::array<bool, 3>{true, true, true}));
  EXPECT_EQ(closure_equivalence_check(n, p("r3"), p("r2"), OracleBudget{}),
            (std::array<bool, 3>{false, false, false}));
  EXPECT_THROW(closure_equivalence_check(n, p("r2"), p("r2"), OracleBudget{}), PreconditionError);
}

TEST(GenealogyClosure, RootClosesToEverything) {
  TypedSpace s = builtin("genealogy5");
  ChainNeighborhoods n(s, parse_chain(kGenealogyAnc, s.context()));
  EXPECT_EQ(c_closure(n, pts(s, "B")).closure, s.all_points());
  EXPECT_EQ(e_c(n), pts(s, "W"));
  DensityReport d = min_c_dense(n, OracleBudget{});
  EXPECT_TRUE(d.oracle_checked);
  EXPECT_EQ(d.density, 1 + d.maximal.size());
  EXPECT_TRUE(d.witness.contains(s.require_point("W")));
}

TEST(DiscreteChain, EveryPointCounts) {
  // Singleton generators; the base level lies below every singleton type.
  auto ctx = make_context(Poset({"g"}, {}), {"x", "y", "z"});
  std::vector<GeneratorSpec> gens;
  for (const char* id : {"x", "y", "z"}) {
    gens.push_back({id, PointSet::single(ctx->require_point(id)), parse_type_expr(std::string("g&@") + id, ctx)});
  }
  TypedSpace s = generate_topology(ctx, gens);
  ASSERT_EQ(s.open_count(), 8U);
  ChainNeighborhoods n(s, parse_chain("g&@x&@y&@z ; g", ctx));
  EXPECT_TRUE(e_c(n).empty());
  EXPECT_EQ(n.jc_members().size(), 3U);
  DensityReport d = min_c_dense(n, OracleBudget{});
  EXPECT_EQ(d.density, 3U);
  EXPECT_EQ(d.witness, s.all_points());
}

// J_c(b) = {{a,b},{b,c}} is not nested: {b} is open but typed below the base.
class NonNestedFamily : public ::testing::Test {
 protected:
  ContextPtr ctx = make_context(Poset({"g", "h", "k"}, {}), {"a", "b", "c"});
  TypedSpace s = generate_topology(ctx, {{"ab", PointSet{0b011}, parse_type_expr("g", ctx)},
                                         {"b", PointSet{0b010}, parse_type_expr("h", ctx)},
                                         {"c", PointSet{0b100}, parse_type_expr("g&@c", ctx)},
                                         {"all", PointSet{0b111}, parse_type_expr("k", ctx)}});
  ChainNeighborhoods n{s, parse_chain("g&@c ; g|h", ctx)};
};

TEST_F(NonNestedFamily, SetUp) {
  EXPECT_TRUE(validate_type_mapping(s).ok());
  EXPECT_TRUE(is_strictly_typed(s).strict);
  EXPECT_EQ(n.jc_members().size(), 3U);
  EXPECT_EQ(n.jc_intersection(s.require_point("b")), pts(s, "b"));
}

TEST_F(NonNestedFamily, IntersectionCriterionIsStricterThanTheDefinition) {
  // {a,c} meets both members of J_c(b) but not their intersection.
  EXPECT_THROW(c_closure(n, pts(s, "a,c")), InvariantError);
  OracleReport r = oracle_check_space(s);
  const CheckResult* c = r.find("closure-criterion");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->violations.empty());
}

TEST_F(NonNestedFamily, MinimumWitnessesCrossClasses) {
  DensityReport d = min_c_dense(n, OracleBudget{});
  EXPECT_EQ(d.density, 2U);
  EXPECT_EQ(d.witness, pts(s, "b,c"));
  OracleOutcome<DenseOracleResult> o = oracle_min_dense(s, n.chain(), OracleBudget{});
  ASSERT_FALSE(o.skipped);
  EXPECT_EQ(o.value.witnesses, (std::vector<PointSet>{pts(s, "a,c"), pts(s, "b,c")}));
  EXPECT_EQ(equiv_classes(n), (std::vector<PointSet>{pts(s, "a"), pts(s, "b"), pts(s, "c")}));
}

// Explicitly typed discrete space: every open holding one of the pairs
// {x1,a},{x1,b},{x2,a},{x2,b} is typed above the base, nothing else is.
TEST(CrossedPairs, FormulaOvercountsTheMinimumDenseSet) {
  TypedSpace s = load_space(std::string(TTS_FIXTURES_DIR) + "/spaces/crossed4.space.json");
  ASSERT_TRUE(is_strictly_typed(s).strict);
  ChainNeighborhoods n(s, parse_chain("g&@x1&@x2&@a&@b ; g", s.context()));
  EXPECT_EQ(n.jc_members().size(), 4U);
  OracleBudget no_cross;
  no_cross.max_points = 0;
  DensityReport d = min_c_dense(n, no_cross);
  EXPECT_EQ(d.density, 4U);
  OracleOutcome<DenseOracleResult> o = oracle_min_dense(s, n.chain(), OracleBudget{});
  ASSERT_FALSE(o.skipped);
  EXPECT_EQ(o.value.size, 2U);
  EXPECT_TRUE(is_c_dense(n, pts(s, "a,b"), s.all_points()));
  EXPECT_THROW(min_c_dense(n, OracleBudget{}), InvariantError);
}

TEST(Properties, ClosureLaws) {
  std::mt19937 rng(21);
  for (const std::string& name : {"genealogy5", "street5", "street2x3", "courses"}) {
    TypedSpace s = builtin(name);
    RealizedTypes r = realized_types(s);
    for (std::size_t i = 0; i < r.types.size(); ++i) {
      for (std::size_t j = 0; j < r.types.size(); ++j) {
        if (!r.leq[i][j]) continue;
        ChainNeighborhoods n(s, TypeChain({r.types[i], r.types[j]}));
        const PointSet e = e_c(n);
        std::uniform_int_distribution<std::uint64_t> pick(0, s.all_points().bits());
        for (int k = 0; k < 8; ++k) {
          PointSet a{pick(rng)}, b{pick(rng)};
          b |= a;
          const PointSet ca = c_closure(n, a).closure;
          EXPECT_TRUE(e.subset_of(ca));
          EXPECT_TRUE(ca.subset_of(c_closure(n, b).closure));
          EXPECT_TRUE((a - e).subset_of(ca));
        }
      }
    }
  }
}

}  // namespace
}  // namespace tts
