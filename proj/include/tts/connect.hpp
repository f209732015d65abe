#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tts/chains.hpp"
#include "tts/oracle.hpp"

namespace tts {

struct ConnectivityResult {
  bool connected = true;
  std::optional<std::pair<OpenId, OpenId>> separator;  // disjoint members of T_c(X) splitting A
};

// No disjoint U, V in T_c(X) with A inside U | V and both meeting A.
ConnectivityResult is_c_connected(const ChainNeighborhoods& n, PointSet a);
ConnectivityResult is_c_connected(const TypedSpace& s, PointSet a, const TypeChain& c);

struct ConnectionCertificate {
  PointIndex x = 0;
  PointIndex y = 0;
  PointSet set;
  std::vector<OpenId> path;  // consecutive members intersect
};

enum class ConnectionStatus {
  kFound,
  kNoneConfirmed,      // exhaustive search agrees no connection exists
  kNotFoundByBase,     // base search failed; oracle not run (over budget)
  kOracleDisagrees,    // base search failed but the oracle found a connecting set
};

struct ConnectionResult {
  ConnectionStatus status = ConnectionStatus::kNotFoundByBase;
  std::optional<ConnectionCertificate> certificate;
  std::string note;
};

// Search over the overlap graph of verified c-connected J_c(X) members.
// A returned certificate has been re-verified c-connected. When no path
// exists and |X| fits the connection budget the exhaustive oracle decides.
ConnectionResult find_connection(const ChainNeighborhoods& n, PointIndex x, PointIndex y,
                                 const OracleBudget& budget = OracleBudget::for_connections());
ConnectionResult find_connection(const TypedSpace& s, PointIndex x, PointIndex y, const TypeChain& c);

struct Components {
  std::vector<PointSet> parts;  // ordered by smallest member
  PointSet remainder;           // points in no verified J_c(X) member
};

Components c_components(const ChainNeighborhoods& n);
Components c_components(const TypedSpace& s, const TypeChain& c);

std::string to_string(ConnectionStatus status);

}  // namespace tts
