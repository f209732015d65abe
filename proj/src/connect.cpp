#include "tts/connect.hpp"

#include <algorithm>
#include <deque>

#include "tts/errors.hpp"

namespace tts {

ConnectivityResult is_c_connected(const ChainNeighborhoods& n, PointSet a) {
  const TypedSpace& s = n.space();
  if (!a.subset_of(s.all_points())) throw UnknownPointError("index outside the point set");
  const auto& tc = n.tc_members();
  for (std::size_t i = 0; i < tc.size(); ++i) {
    const PointSet u = s.open(tc[i]);
    if (!u.intersects(a)) continue;
    for (std::size_t j = i + 1; j < tc.size(); ++j) {
      const PointSet v = s.open(tc[j]);
      if (u.intersects(v) || !v.intersects(a)) continue;
      if (a.subset_of(u | v)) return {false, std::make_pair(tc[i], tc[j])};
    }
  }
  return {};
}

ConnectivityResult is_c_connected(const TypedSpace& s, PointSet a, const TypeChain& c) {
  return is_c_connected(ChainNeighborhoods(s, c), a);
}

namespace {

// Verified c-connected members of J_c(X).
std::vector<OpenId> connected_candidates(const ChainNeighborhoods& n) {
  std::vector<OpenId> out;
  for (OpenId u : n.jc_members()) {
    if (is_c_connected(n, n.space().open(u)).connected) out.push_back(u);
  }
  return out;
}

}  // namespace

ConnectionResult find_connection(const ChainNeighborhoods& n, PointIndex x, PointIndex y,
                                 const OracleBudget& budget) {
  const TypedSpace& s = n.space();
  if (x >= s.point_count()) throw UnknownPointError(std::to_string(x));
  if (y >= s.point_count()) throw UnknownPointError(std::to_string(y));
  if (x == y) throw PreconditionError("a connection needs two distinct points");

  const std::vector<OpenId> cand = connected_candidates(n);
  const std::size_t k = cand.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(k, kNone);
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.open(cand[i]).contains(x)) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  std::size_t goal = kNone;
  while (!queue.empty() && goal == kNone) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (s.open(cand[i]).contains(y)) {
      goal = i;
      break;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (!seen[j] && s.open(cand[i]).intersects(s.open(cand[j]))) {
        seen[j] = true;
        parent[j] = i;
        queue.push_back(j);
      }
    }
  }

  ConnectionResult r;
  if (goal != kNone) {
    ConnectionCertificate cert{x, y, {}, {}};
    for (std::size_t i = goal; i != kNone; i = parent[i]) cert.path.push_back(cand[i]);
    std::reverse(cert.path.begin(), cert.path.end());
    for (OpenId u : cert.path) cert.set |= s.open(u);
    const ConnectivityResult check = is_c_connected(n, cert.set);
    if (!check.connected) {
      throw InvariantError("chained union " + format_set(s, cert.set) + " is split by (" +
                           format_set(s, s.open(check.separator->first)) + ", " +
                           format_set(s, s.open(check.separator->second)) + ")");
    }
    r.status = ConnectionStatus::kFound;
    r.certificate = std::move(cert);
    return r;
  }

  const auto oracle = oracle_connected(s, n.chain(), x, y, budget);
  if (oracle.skipped) {
    r.status = ConnectionStatus::kNotFoundByBase;
    r.note = "not found by base search; exhaustive check skipped: " + oracle.reason;
  } else if (oracle.value) {
    r.status = ConnectionStatus::kOracleDisagrees;
    r.note = "base search found no path but an exhaustive search found a c-connected set containing both points";
  } else {
    r.status = ConnectionStatus::kNoneConfirmed;
    r.note = "no c-connected set within the support of T_c(X) contains both points";
  }
  return r;
}

ConnectionResult find_connection(const TypedSpace& s, PointIndex x, PointIndex y, const TypeChain& c) {
  return find_connection(ChainNeighborhoods(s, c), x, y);
}

Components c_components(const ChainNeighborhoods& n) {
  const TypedSpace& s = n.space();
  const std::vector<OpenId> cand = connected_candidates(n);
  // Parts stay pairwise disjoint; a new candidate absorbs every part it
  // touches, repeated until nothing else overlaps.
  std::vector<PointSet> parts;
  for (OpenId u : cand) {
    PointSet merged = s.open(u);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<PointSet> keep;
      for (PointSet p : parts) {
        if (p.intersects(merged)) {
          merged |= p;
          grew = true;
        } else {
          keep.push_back(p);
        }
      }
      parts = std::move(keep);
    }
    parts.push_back(merged);
  }
  std::sort(parts.begin(), parts.end(), [](PointSet a, PointSet b) { return a.front() < b.front(); });
  PointSet covered;
  for (PointSet p : parts) covered |= p;
  return {std::move(parts), s.all_points() - covered};
}

Components c_components(const TypedSpace& s, const TypeChain& c) { return c_components(ChainNeighborhoods(s, c)); }

std::string to_string(ConnectionStatus status) {
  switch (status) {
    case ConnectionStatus::kFound:
      return "found";
    case ConnectionStatus::kNoneConfirmed:
      return "none";
    case ConnectionStatus::kNotFoundByBase:
      return "not-found-by-base-search";
    case ConnectionStatus::kOracleDisagrees:
      return "oracle-disagrees";
  }
  return "unknown";
}

}  // namespace tts
