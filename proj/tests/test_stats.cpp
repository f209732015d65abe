#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "tts/stats.hpp"

namespace tts {
namespace {

// Two-pass reference.
std::pair<double, double> reference(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<std::size_t> rank_order(const std::vector<double>& z) {
  std::vector<std::size_t> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
  return idx;
}

TEST(PChainStats, StreetRightRays) {
  TypedSpace s = builtin("street5");
  ScoreTable t = pchain_stats(s, require_generator(s, "right"));
  std::vector<double> sizes;
  for (const auto& [subject, value] : t.population()) sizes.push_back(value);
  std::vector<double> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<double>{1, 2, 3, 4}));
  const auto [mean, sd] = reference(sizes);
  EXPECT_DOUBLE_EQ(t.mean(), 2.5);
  EXPECT_NEAR(t.sample_std(), sd, 1e-12);
  EXPECT_NEAR(t.sample_std(), 1.2909944487358056, 1e-12);
  EXPECT_NEAR(t.z_of("{r2,r3,r4,r5}"), (4 - mean) / sd, 1e-12);
  EXPECT_NEAR(t.z_of("{r2,r3,r4,r5}"), 1.1618950038622251, 1e-12);
}

TEST(ScoreTables, DegeneratePopulations) {
  EXPECT_THROW(ScoreTable({{"a", 3.0}}), NoVarianceError);
  EXPECT_THROW(ScoreTable({{"a", 2.0}, {"b", 2.0}}), NoVarianceError);
  EXPECT_THROW(ScoreTable({}), NoVarianceError);
}

TEST(ScoreTables, Csv) {
  ScoreTable t({{"a", 1.0}, {"b,c", 3.0}});
  EXPECT_EQ(t.to_csv(), "subject,value,z\na,1,-0.70710678118654746\n\"b,c\",3,0.70710678118654746\n");
}

TEST(Activity, StreetAndGenealogy) {
  TypedSpace street = builtin("street5");
  EXPECT_EQ(activity_counts(street, require_generator(street, "right")), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  ScoreTable z = point_activity(street, require_generator(street, "right"));
  EXPECT_EQ(rank_order(z.z()).back(), street.require_point("r5"));

  TypedSpace gen = builtin("genealogy5");
  EXPECT_EQ(activity_counts(gen, require_generator(gen, "anc")), (std::vector<std::size_t>{4, 3, 2, 1, 0}));
}

TEST(Activity, BoundedByOpenCount) {
  for (const std::string& name : builtin_names()) {
    TypedSpace s = builtin(name);
    for (std::size_t g = 0; g < s.poset().size(); ++g) {
      std::vector<std::size_t> counts = activity_counts(s, g);
      for (PointIndex x = 0; x < s.point_count(); ++x) {
        std::size_t opens = 0;
        for (PointSet u : s.opens()) opens += u.contains(x) ? 1 : 0;
        EXPECT_LE(counts[x], opens) << name;
      }
    }
  }
}

TEST(Activity, IdenticalPointsHaveNoVariance) {
  auto ctx = make_context(Poset({"g"}, {}), {"x", "y"});
  TypedSpace s = generate_topology(ctx, {{"all", PointSet{0b11}, TypeTerm::generator(ctx, "g")}});
  EXPECT_THROW(point_activity(s, 0), NoVarianceError);
}

TEST(PairAffinity, Errors) {
  TypedSpace gen = builtin("genealogy5");
  EXPECT_THROW(pair_count(gen, 0, 0), PreconditionError);
  // The fixture topology is discrete, so every pair sits in 8 opens.
  EXPECT_EQ(pair_count(gen, gen.require_point("B"), gen.require_point("S")), 8U);
  EXPECT_EQ(pair_count(gen, gen.require_point("B"), gen.require_point("W")), 8U);
  EXPECT_THROW(pair_affinity(gen), NoVarianceError);

  auto ctx = make_context(Poset({"g"}, {}), {"x", "y"});
  TypedSpace tiny = generate_topology(
      ctx, {{"x", PointSet{0b01}, parse_type_expr("g&@x", ctx)}, {"all", PointSet{0b11}, TypeTerm::generator(ctx, "g")}});
  EXPECT_THROW(pair_affinity(tiny), NoVarianceError);
}

TEST(PairAffinity, StreetPairsFavourNeighbours) {
  TypedSpace s = builtin("street5");
  ScoreTable t = pair_affinity(s);
  EXPECT_GT(t.z_of("{r4,r5}"), t.z_of("{r1,r5}"));
}

TEST(Properties, RelabelingPreservesScores) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, double>> pop;
    for (int i = 0; i < 6; ++i) pop.emplace_back("s" + std::to_string(i), value(rng));
    ScoreTable a(pop);
    std::shuffle(pop.begin(), pop.end(), rng);
    ScoreTable b(pop);
    for (const auto& [subject, v] : pop) EXPECT_NEAR(a.z_of(subject), b.z_of(subject), 1e-12);
  }
}

TEST(Properties, ScalingKeepsTheOrdering) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_real_distribution<double> factor(0.1, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, double>> pop, scaled;
    const double k = factor(rng);
    for (int i = 0; i < 8; ++i) {
      const double v = size(rng);
      pop.emplace_back("s" + std::to_string(i), v);
      scaled.emplace_back("s" + std::to_string(i), v * k);
    }
    try {
      EXPECT_EQ(rank_order(ScoreTable(pop).z()), rank_order(ScoreTable(scaled).z()));
    } catch (const NoVarianceError&) {
    }
  }
}

TEST(Properties, MatchesTwoPassReference) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> value(-1e3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, double>> pop;
    std::vector<double> raw;
    for (int i = 0; i < 2 + trial % 30; ++i) {
      raw.push_back(value(rng));
      pop.emplace_back("s" + std::to_string(i), raw.back());
    }
    ScoreTable t(pop);
    const auto [mean, sd] = reference(raw);
    EXPECT_NEAR(t.mean(), mean, 1e-12 * std::max(1.0, std::abs(mean)));
    EXPECT_NEAR(t.sample_std(), sd, 1e-12 * sd);
  }
}

}  // namespace
}  // namespace tts
