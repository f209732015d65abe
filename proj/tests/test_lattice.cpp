#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tts/errors.hpp"
#include "tts/lattice.hpp"

namespace tts {
namespace {

using testing::equal_semantic;
using testing::random_context;
using testing::random_term;

class LatticeTest : public ::testing::Test {
 protected:
  ContextPtr ctx = make_context(Poset({"anc", "desc"}, {}), {"B", "S", "H", "C", "W"});
  TypeTerm t(const char* text) const { return parse_type_expr(text, ctx); }
};

TEST_F(LatticeTest, ParsesSingleClause) {
  TypeTerm a = t("anc & @W");
  ASSERT_EQ(a.clauses().size(), 1U);
  EXPECT_EQ(to_string(a), "anc & @W");
}

TEST_F(LatticeTest, ComplementLiteralsGiveBottomAndTop) {
  EXPECT_TRUE(t("@W & ~@W").is_bottom());
  EXPECT_TRUE(t("@W | ~@W").is_top());
  EXPECT_TRUE(join(t("@W"), t("~@W")).is_top());
}

TEST_F(LatticeTest, NormalizeAbsorbsAndCloses) {
  EXPECT_EQ(t("(anc&@W) | (anc&@W&@C)"), t("anc&@W"));
  EXPECT_EQ(t("(anc&@W) | (anc&~@W)"), t("anc"));
  EXPECT_TRUE(equal_semantic(t("(anc&@W) | (anc&~@W)"), t("anc")));
}

TEST_F(LatticeTest, MeetAndJoinExamples) {
  EXPECT_EQ(meet(t("anc"), TypeTerm::top(ctx)), t("anc"));
  EXPECT_EQ(meet(t("anc&@W"), t("desc&@W")), t("anc&desc&@W"));
}

TEST_F(LatticeTest, OrderExamples) {
  EXPECT_TRUE(leq(t("anc&@W"), t("anc")));
  EXPECT_FALSE(leq(t("anc"), t("desc")));
  EXPECT_TRUE(leq(TypeTerm::bottom(ctx), t("desc|@C")));
}

TEST_F(LatticeTest, Evaluation) {
  const std::uint64_t anc = std::uint64_t{1} << *ctx->poset().index_of("anc");
  const std::uint64_t w = std::uint64_t{1} << ctx->require_point("W");
  EXPECT_TRUE(eval(TypeTerm::top(ctx), Valuation{}));
  EXPECT_FALSE(eval(t("anc&@W"), Valuation{anc, 0}));
  EXPECT_TRUE(eval(t("(anc&@W)|(anc&~@W)"), Valuation{anc, 0}));
  EXPECT_TRUE(eval(t("(anc&@W)|(anc&~@W)"), Valuation{anc, w}));
}

TEST(Valuations, CountsFollowThePoset) {
  auto antichain = make_context(Poset({"anc", "desc"}, {}), {});
  LiteralSupport all{0b11, 0};
  EXPECT_EQ(enumerate_valuations(*antichain, all).size(), 4U);

  auto chain = make_context(Poset({"p", "q"}, {{"p", "q"}}), {});
  EXPECT_EQ(enumerate_valuations(*chain, all).size(), 3U);

  auto one_point = make_context(Poset({}, {}), {"x"});
  EXPECT_EQ(enumerate_valuations(*one_point, LiteralSupport{0, 1}).size(), 2U);
}

TEST(Valuations, BoundIsEnforced) {
  std::vector<std::string> xs;
  for (int i = 0; i < 8; ++i) xs.push_back("x" + std::to_string(i));
  auto ctx = make_context(Poset({}, {}), xs);
  EXPECT_THROW(enumerate_valuations(*ctx, LiteralSupport{0, 0xFF}, 4), BoundExceededError);
}

TEST(JoinIrreducible, Examples) {
  auto ctx = make_context(Poset({"anc"}, {}), {"x", "y"});
  EXPECT_FALSE(is_join_irreducible(TypeTerm::bottom(ctx)));
  EXPECT_FALSE(is_join_irreducible(parse_type_expr("@x", ctx)));
  EXPECT_TRUE(is_join_irreducible(parse_type_expr("anc&@x&~@y", ctx)));
}

TEST_F(LatticeTest, FilterUpset) {
  std::vector<TypeTerm> cands{t("anc"), t("desc"), TypeTerm::top(ctx)};
  auto up = filter_upset(t("anc&@W"), cands);
  ASSERT_EQ(up.size(), 2U);
  EXPECT_EQ(up[0], t("anc"));
  EXPECT_TRUE(up[1].is_top());
  EXPECT_THROW(filter_upset(TypeTerm::bottom(ctx), cands), PreconditionError);
  std::vector<TypeTerm> only_anc{t("anc")};
  EXPECT_TRUE(filter_upset(TypeTerm::top(ctx), only_anc).empty());
}

TEST(PosetOrder, GeneratorAbsorptionInsideClause) {
  auto ctx = make_context(Poset({"p", "q"}, {{"p", "q"}}), {"x"});
  EXPECT_EQ(parse_type_expr("p & q", ctx), parse_type_expr("p", ctx));
  EXPECT_TRUE(leq(parse_type_expr("p", ctx), parse_type_expr("q", ctx)));
  EXPECT_FALSE(leq(parse_type_expr("q", ctx), parse_type_expr("p", ctx)));
}

TEST(PosetOrder, CycleRejected) {
  EXPECT_THROW(Poset({"p", "q"}, {{"p", "q"}, {"q", "p"}}), ValidationError);
}

TEST(Parse, Errors) {
  auto ctx = make_context(Poset({"anc"}, {}), {"x"});
  EXPECT_THROW(parse_type_expr("anc &", ctx), ParseError);
  EXPECT_THROW(parse_type_expr("nope", ctx), UnknownIdentifierError);
  EXPECT_THROW(parse_type_expr("@z", ctx), UnknownIdentifierError);
}

TEST(Parse, RoundTripsThroughText) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto ctx = random_context(rng, 3, 3, true);
    TypeTerm a = random_term(rng, ctx);
    EXPECT_EQ(parse_type_expr(to_string(a), ctx), a) << to_string(a);
  }
}

TEST(Properties, SyntacticOrderMatchesValuations) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto ctx = random_context(rng, 1 + i % 4, 1 + (i / 4) % 4, i % 2 == 0);
    TypeTerm a = random_term(rng, ctx);
    TypeTerm b = random_term(rng, ctx);
    ASSERT_EQ(leq(a, b), leq_semantic(a, b)) << to_string(a) << " <= " << to_string(b);
  }
}

TEST(Properties, LatticeLaws) {
  std::mt19937 rng(8);
  for (int i = 0; i < 300; ++i) {
    auto ctx = random_context(rng, 3, 3, i % 2 == 0);
    TypeTerm a = random_term(rng, ctx), b = random_term(rng, ctx), c = random_term(rng, ctx);
    EXPECT_EQ(meet(a, b), meet(b, a));
    EXPECT_EQ(join(a, b), join(b, a));
    EXPECT_EQ(meet(a, meet(b, c)), meet(meet(a, b), c));
    EXPECT_EQ(join(a, join(b, c)), join(join(a, b), c));
    EXPECT_EQ(meet(a, join(a, b)), a);
    EXPECT_EQ(join(a, meet(a, b)), a);
    EXPECT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
    EXPECT_TRUE(leq(meet(a, b), a));
    EXPECT_TRUE(leq(a, join(a, b)));
  }
}

TEST(Properties, CanonicalOnEqualRewrites) {
  std::mt19937 rng(9);
  for (int i = 0; i < 300; ++i) {
    auto ctx = random_context(rng, 2, 3, i % 2 == 0);
    TypeTerm a = random_term(rng, ctx);
    TypeTerm b = random_term(rng, ctx);
    // Semantically equal rewrites of a and a | b.
    EXPECT_EQ(join(a, meet(a, b)), a);
    TypeTerm taut = parse_type_expr("@x0 | ~@x0", ctx);
    EXPECT_EQ(meet(join(a, b), taut), join(a, b));
    if (equal_semantic(a, b)) EXPECT_EQ(a, b);
  }
}

TEST(Properties, ContextMismatchRejected) {
  auto c1 = make_context(Poset({"p"}, {}), {"x"});
  auto c2 = make_context(Poset({"p"}, {}), {"x"});
  EXPECT_THROW(meet(TypeTerm::generator(c1, "p"), TypeTerm::generator(c2, "p")), ContextMismatchError);
}

}  // namespace
}  // namespace tts
