#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tts/connect.hpp"
#include "tts/oracle.hpp"

namespace tts {
namespace {

using testing::kStreet2x3Right;
using testing::kStreetRight;
using testing::pts;

class TwoStreets : public ::testing::Test {
 protected:
  TypedSpace s = builtin("street2x3");
  TypeChain c = parse_chain(kStreet2x3Right, s.context());
  ChainNeighborhoods n{s, c};
  PointIndex p(const char* id) const { return s.require_point(id); }
};

TEST_F(TwoStreets, BlocksAcrossStreetsAreSeparated) {
  ConnectivityResult r = is_c_connected(n, pts(s, "a2,a3,b2,b3"));
  EXPECT_FALSE(r.connected);
  ASSERT_TRUE(r.separator.has_value());
  EXPECT_EQ(s.open(r.separator->first), pts(s, "a2,a3"));
  EXPECT_EQ(s.open(r.separator->second), pts(s, "b2,b3"));
  EXPECT_TRUE(is_c_connected(n, pts(s, "a2,a3")).connected);
  EXPECT_TRUE(is_c_connected(n, pts(s, "b3")).connected);
}

TEST_F(TwoStreets, NoConnectionAcrossStreets) {
  OracleOutcome<bool> o = oracle_connected(s, c, p("a2"), p("b2"), OracleBudget::for_connections());
  ASSERT_FALSE(o.skipped);
  EXPECT_FALSE(o.value);
  ConnectionResult r = find_connection(n, p("a2"), p("b2"));
  EXPECT_EQ(r.status, ConnectionStatus::kNoneConfirmed);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST_F(TwoStreets, LiteralReadingIsVacuousOutsideTheSupport) {
  // a1 lies in no sandwiched open, so any set holding it cannot be split.
  OracleOutcome<bool> o = oracle_connected(s, c, p("a1"), p("b2"), OracleBudget::for_connections(), false);
  ASSERT_FALSE(o.skipped);
  EXPECT_TRUE(o.value);
}

TEST_F(TwoStreets, Components) {
  Components parts = c_components(n);
  EXPECT_EQ(parts.parts, (std::vector<PointSet>{pts(s, "a2,a3"), pts(s, "b2,b3")}));
  EXPECT_EQ(parts.remainder, pts(s, "a1,b1"));
}

TEST(StreetConnection, CertificateIsVerified) {
  TypedSpace s = builtin("street5");
  ChainNeighborhoods n(s, parse_chain(kStreetRight, s.context()));
  ConnectionResult r = find_connection(n, s.require_point("r2"), s.require_point("r4"));
  ASSERT_EQ(r.status, ConnectionStatus::kFound);
  ASSERT_TRUE(r.certificate.has_value());
  const ConnectionCertificate& cert = *r.certificate;
  EXPECT_EQ(cert.set, pts(s, "r2,r3,r4,r5"));
  EXPECT_TRUE(is_c_connected(n, cert.set).connected);
  EXPECT_TRUE(cert.set.contains(s.require_point("r2")) && cert.set.contains(s.require_point("r4")));
  EXPECT_THROW(find_connection(n, s.require_point("r2"), s.require_point("r2")), PreconditionError);
  EXPECT_EQ(to_string(r.status), "found");
}

TEST(Properties, SearchAgreesWithOracleOnEveryPair) {
  for (const char* name : {"street5", "street2x3"}) {
    TypedSpace s = builtin(name);
    ChainCover cover = chain_cover(s);
    for (const TypeChain& c : cover.chains) {
      ChainNeighborhoods n(s, c);
      const PointSet support = n.jc_support();
      for (PointIndex x = 0; x < s.point_count(); ++x) {
        for (PointIndex y = x + 1; y < s.point_count(); ++y) {
          if (!support.contains(x) || !support.contains(y)) continue;
          ConnectionResult r = find_connection(n, x, y);
          OracleOutcome<bool> o = oracle_connected(s, c, x, y, OracleBudget::for_connections());
          ASSERT_FALSE(o.skipped);
          EXPECT_NE(r.status, ConnectionStatus::kOracleDisagrees) << name << " " << to_string(c);
          EXPECT_EQ(r.status == ConnectionStatus::kFound, o.value) << name << " " << to_string(c);
        }
      }
    }
  }
}

}  // namespace
}  // namespace tts
