#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tts/chains.hpp"
#include "tts/space.hpp"

namespace tts {

struct OracleBudget;

struct ClosureWitness {
  PointIndex point;
  bool exceptional = false;   // J_c(x) empty: member of every closure
  PointSet jc_intersection;   // meaningful only when !exceptional
};

struct ClosureReport {
  PointSet input;
  PointSet closure;
  std::vector<ClosureWitness> witnesses;  // one per point, in point order
};

// {x : every U in J_c(x) meets A}. At points with nonempty J_c(x) the
// intersection criterion (A meets the intersection of J_c(x)) is evaluated
// as well; a disagreement raises InvariantError naming the point.
ClosureReport c_closure(const ChainNeighborhoods& n, PointSet a);
ClosureReport c_closure(const TypedSpace& s, PointSet a, const TypeChain& c);

// Points x with J_c(x) empty. Checks that E_c is the complement of the
// union of J_c(X) and that it is c-closed.
PointSet e_c(const ChainNeighborhoods& n);
PointSet e_c(const TypedSpace& s, const TypeChain& c);

// Partition of X \ E_c by equality of J_c(x), ordered by smallest member.
std::vector<PointSet> equiv_classes(const ChainNeighborhoods& n);

bool is_c_dense(const ChainNeighborhoods& n, PointSet d, PointSet y);
bool is_c_dense(const TypedSpace& s, PointSet d, PointSet y, const TypeChain& c);

struct DensityReport {
  PointSet exceptional;
  std::vector<PointSet> classes;          // equivalence classes of X \ E_c
  std::vector<std::size_t> maximal;       // indices into classes with maximal J_c
  std::size_t density = 0;
  PointSet witness;
  bool oracle_checked = false;
};

// density = |E_c| + number of maximal families in (J_c, subset). The
// witness takes the smallest point of each maximal class. When the space
// fits the oracle budget the exhaustive minimum is compared and a
// mismatch raises InvariantError.
DensityReport min_c_dense(const ChainNeighborhoods& n, const OracleBudget& budget);
DensityReport min_c_dense(const TypedSpace& s, const TypeChain& c);

// (J_c(x) subset of J_c(y), x in closure(A) for all A containing y,
// x in closure({y})). The second entry enumerates every A when
// |X| <= budget.max_points and the extensions {y} and {y, z} otherwise.
// Throws InvariantError unless all three agree.
std::array<bool, 3> closure_equivalence_check(const ChainNeighborhoods& n, PointIndex x, PointIndex y,
                                              const OracleBudget& budget);

}  // namespace tts
