#pragma once

// Brute-force reference implementations. Nothing here calls the basis,
// chains, closure or connect modules: the order of types is decided by
// valuation enumeration (leq_semantic), families are rebuilt from the raw
// open/type table, and every quantifier is enumerated directly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tts/chains.hpp"
#include "tts/space.hpp"

namespace tts {

struct OracleBudget {
  std::size_t max_points = 12;
  std::size_t max_subsets = std::size_t{1} << 22;
  std::size_t max_valuations = std::size_t{1} << 20;
  double time_limit_seconds = 300.0;

  // Honors TTS_BUDGET_POINTS.
  static OracleBudget from_env();
  // Default for connection searches (|X| <= 10).
  static OracleBudget for_connections();
};

template <class T>
struct OracleOutcome {
  bool skipped = false;
  std::string reason;
  T value{};
};

struct DenseOracleResult {
  std::size_t size = 0;
  std::vector<PointSet> witnesses;  // every c-dense set of minimum size
};

OracleOutcome<DenseOracleResult> oracle_min_dense(const TypedSpace& s, const TypeChain& c,
                                                  const OracleBudget& budget);

// Some A with x, y in A is c-connected. With `within_support` (default)
// only subsets of the union of T_c(X) are considered; a set containing a
// point outside every T_c(X) member cannot be split and is connected
// vacuously.
OracleOutcome<bool> oracle_connected(const TypedSpace& s, const TypeChain& c, PointIndex x, PointIndex y,
                                     const OracleBudget& budget, bool within_support = true);

struct CheckResult {
  std::string name;
  std::string scope;  // quantifier ranges
  std::size_t instances = 0;
  std::vector<std::string> violations;
  bool skipped = false;
  std::string skip_reason;
  // Reported but not part of OracleReport::passed().
  bool informational = false;

  bool passed() const { return !skipped && violations.empty(); }
};

struct OracleReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

// Batch re-verification of a space: topology closure, the type-mapping
// conditions, the meet/join bounds, incompatible forcing, self-anchored
// irreducibility, irreducible decomposition, chain neighborhood bases,
// p-chain irreducibility, the closure criterion, the exceptional set and
// the connectivity results, over all realized chains of length 2 and 3.
OracleReport oracle_check_space(const TypedSpace& s, const OracleBudget& budget = {});

}  // namespace tts
