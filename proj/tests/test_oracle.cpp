#include <gtest/gtest.h>

#include <cstdlib>

#include "test_support.hpp"
#include "tts/oracle.hpp"

namespace tts {
namespace {

using testing::kStreetRight;
using testing::open_of;
using testing::pts;

class FixtureOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureOracle, AllChecksPass) {
  TypedSpace s = builtin(GetParam());
  OracleReport r = oracle_check_space(s);
  for (const CheckResult& c : r.checks) {
    if (c.informational) continue;
    EXPECT_TRUE(c.passed()) << c.name << ": " << (c.violations.empty() ? c.skip_reason : c.violations.front());
    EXPECT_GT(c.instances, 0U) << c.name;
  }
  EXPECT_TRUE(r.passed());
}

INSTANTIATE_TEST_SUITE_P(Builtins, FixtureOracle,
                         ::testing::Values("genealogy5", "street5", "street5-both", "street2x3", "courses"));

TEST(Mutation, CorruptedRayTypeIsPinpointed) {
  TypedSpace s = builtin("genealogy5");
  TypedSpace bad = s.with_sigma(open_of(s, "B,S,H,C"), s.sigma(open_of(s, "B")));
  OracleReport r = oracle_check_space(bad);
  EXPECT_FALSE(r.passed());
  const CheckResult* meet = r.find("meet-bound");
  ASSERT_NE(meet, nullptr);
  ASSERT_FALSE(meet->violations.empty());
  bool named = false;
  for (const std::string& v : meet->violations) named = named || v.find("{B,S,H,C}") != std::string::npos;
  EXPECT_TRUE(named) << meet->violations.front();
}

TEST(SandwichUnion, ReportedButInformational) {
  OracleReport r = oracle_check_space(builtin("genealogy5"));
  const CheckResult* c = r.find("pchain-sandwich-union");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->informational);
  EXPECT_EQ(c->violations.size(), 8U);
  EXPECT_TRUE(r.passed());
}

TEST(Budget, SmallBudgetSkipsSubsetChecks) {
  OracleBudget b;
  b.max_points = 3;
  OracleReport r = oracle_check_space(builtin("street5"), b);
  const CheckResult* c = r.find("closure-criterion");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->skipped);
  EXPECT_FALSE(r.passed());

  TypedSpace s = builtin("street5");
  OracleOutcome<DenseOracleResult> d = oracle_min_dense(s, parse_chain(kStreetRight, s.context()), b);
  EXPECT_TRUE(d.skipped);
}

TEST(Budget, EnvironmentOverride) {
  setenv("TTS_BUDGET_POINTS", "7", 1);
  EXPECT_EQ(OracleBudget::from_env().max_points, 7U);
  EXPECT_EQ(OracleBudget::for_connections().max_points, 7U);
  setenv("TTS_BUDGET_POINTS", "30", 1);
  EXPECT_EQ(OracleBudget::for_connections().max_points, 10U);
  unsetenv("TTS_BUDGET_POINTS");
  EXPECT_EQ(OracleBudget::from_env().max_points, 12U);
}

TEST(DenseOracle, StreetWitnesses) {
  TypedSpace s = builtin("street5");
  OracleOutcome<DenseOracleResult> d = oracle_min_dense(s, parse_chain(kStreetRight, s.context()), OracleBudget{});
  ASSERT_FALSE(d.skipped);
  EXPECT_EQ(d.value.size, 2U);
  EXPECT_EQ(d.value.witnesses, (std::vector<PointSet>{pts(s, "r1,r5")}));
}

}  // namespace
}  // namespace tts
