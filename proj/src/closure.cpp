#include "tts/closure.hpp"

#include <algorithm>
#include <map>

#include "tts/errors.hpp"
#include "tts/oracle.hpp"

namespace tts {

namespace {

bool meets_all(const TypedSpace& s, const std::vector<OpenId>& family, PointSet a) {
  return std::all_of(family.begin(), family.end(), [&](OpenId u) { return s.open(u).intersects(a); });
}

bool family_includes(const std::vector<OpenId>& outer, const std::vector<OpenId>& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

ClosureReport c_closure(const ChainNeighborhoods& n, PointSet a) {
  const TypedSpace& s = n.space();
  if (!a.subset_of(s.all_points())) throw UnknownPointError("index outside the point set");
  ClosureReport r{a, {}, {}};
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    const std::vector<OpenId> family = n.jc_at(x);
    ClosureWitness w{x, family.empty(), n.jc_intersection(x)};
    bool member = true;
    if (!w.exceptional) {
      member = meets_all(s, family, a);
      const bool criterion = w.jc_intersection.intersects(a);
      if (member != criterion) {
        throw InvariantError("closure of " + format_set(s, a) + " at " + s.point_name(x) +
                             ": every neighborhood meets the set but their intersection " +
                             format_set(s, w.jc_intersection) + (criterion ? " does" : " does not"));
      }
    }
    if (member) r.closure.insert(x);
    r.witnesses.push_back(w);
  }
  return r;
}

ClosureReport c_closure(const TypedSpace& s, PointSet a, const TypeChain& c) {
  return c_closure(ChainNeighborhoods(s, c), a);
}

PointSet e_c(const ChainNeighborhoods& n) {
  const TypedSpace& s = n.space();
  PointSet exceptional;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    if (n.jc_at(x).empty()) exceptional.insert(x);
  }
  PointSet reached;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    if (exceptional.contains(x)) continue;
    for (OpenId u : n.jc_at(x)) reached |= s.open(u);
  }
  if (exceptional != s.all_points() - reached) {
    throw InvariantError("exceptional set is not the complement of the reachable neighborhoods");
  }
  if (c_closure(n, exceptional).closure != exceptional) {
    throw InvariantError("exceptional set " + format_set(s, exceptional) + " is not c-closed");
  }
  return exceptional;
}

PointSet e_c(const TypedSpace& s, const TypeChain& c) { return e_c(ChainNeighborhoods(s, c)); }

std::vector<PointSet> equiv_classes(const ChainNeighborhoods& n) {
  const TypedSpace& s = n.space();
  std::map<std::vector<OpenId>, PointSet> groups;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    std::vector<OpenId> family = n.jc_at(x);
    if (!family.empty()) groups[std::move(family)].insert(x);
  }
  std::vector<PointSet> out;
  for (auto& [family, points] : groups) out.push_back(points);
  std::sort(out.begin(), out.end(), [](PointSet a, PointSet b) { return a.front() < b.front(); });
  return out;
}

bool is_c_dense(const ChainNeighborhoods& n, PointSet d, PointSet y) {
  const TypedSpace& s = n.space();
  if (!y.subset_of(s.all_points())) throw UnknownPointError("index outside the point set");
  if (!d.subset_of(y)) throw PreconditionError("dense candidate is not contained in the ambient set");

  std::vector<std::vector<OpenId>> families(s.point_count());
  PointSet exceptional;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    families[x] = n.jc_at(x);
    if (families[x].empty()) exceptional.insert(x);
  }
  const bool covers_exceptional = (exceptional & y).subset_of(d);
  bool dense = covers_exceptional;
  bool dominated = covers_exceptional;
  (y - exceptional).for_each([&](PointIndex x) {
    dense = dense && meets_all(s, families[x], d);
    bool has_dominator = false;
    d.for_each([&](PointIndex z) { has_dominator = has_dominator || family_includes(families[z], families[x]); });
    dominated = dominated && has_dominator;
  });
  if (dominated && !dense) {
    throw InvariantError("a set dominating every neighborhood family failed the density check");
  }
  return dense;
}

bool is_c_dense(const TypedSpace& s, PointSet d, PointSet y, const TypeChain& c) {
  return is_c_dense(ChainNeighborhoods(s, c), d, y);
}

DensityReport min_c_dense(const ChainNeighborhoods& n, const OracleBudget& budget) {
  const TypedSpace& s = n.space();
  DensityReport r;
  r.exceptional = e_c(n);
  r.classes = equiv_classes(n);

  std::vector<std::vector<OpenId>> family_of_class;
  for (PointSet cls : r.classes) family_of_class.push_back(n.jc_at(cls.front()));
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < r.classes.size() && maximal; ++j) {
      if (i != j && family_includes(family_of_class[j], family_of_class[i])) maximal = false;
    }
    if (maximal) r.maximal.push_back(i);
  }
  r.density = r.exceptional.size() + r.maximal.size();
  r.witness = r.exceptional;
  for (std::size_t i : r.maximal) r.witness.insert(r.classes[i].front());

  if (!is_c_dense(n, r.witness, s.all_points())) {
    throw InvariantError("density witness " + format_set(s, r.witness) + " is not c-dense");
  }
  if (s.point_count() <= budget.max_points) {
    auto oracle = oracle_min_dense(s, n.chain(), budget);
    if (!oracle.skipped) {
      r.oracle_checked = true;
      if (oracle.value.size != r.density) {
        std::string example = oracle.value.witnesses.empty() ? "" : format_set(s, oracle.value.witnesses.front());
        throw InvariantError("density formula gives " + std::to_string(r.density) +
                             " but exhaustive search finds " + std::to_string(oracle.value.size) + " (e.g. " +
                             example + ") for chain " + to_string(n.chain()));
      }
    }
  }
  return r;
}

DensityReport min_c_dense(const TypedSpace& s, const TypeChain& c) {
  return min_c_dense(ChainNeighborhoods(s, c), OracleBudget{});
}

std::array<bool, 3> closure_equivalence_check(const ChainNeighborhoods& n, PointIndex x, PointIndex y,
                                              const OracleBudget& budget) {
  const TypedSpace& s = n.space();
  if (x >= s.point_count()) throw UnknownPointError(std::to_string(x));
  if (y >= s.point_count()) throw UnknownPointError(std::to_string(y));
  if (x == y) throw PreconditionError("closure equivalence needs two distinct points");
  const std::vector<OpenId> fx = n.jc_at(x);
  const std::vector<OpenId> fy = n.jc_at(y);
  if (fx.empty() || fy.empty()) throw PreconditionError("both points must lie outside the exceptional set");

  const bool included = family_includes(fy, fx);
  bool every_set = true;
  const PointSet others = s.all_points() - PointSet::single(y);
  if (s.point_count() <= budget.max_points) {
    // Submask walk over everything that may accompany y.
    std::uint64_t sub = 0;
    while (true) {
      if (!meets_all(s, fx, PointSet{sub} | PointSet::single(y))) {
        every_set = false;
        break;
      }
      if (sub == others.bits()) break;
      sub = (sub - others.bits()) & others.bits();
    }
  } else {
    every_set = meets_all(s, fx, PointSet::single(y));
    others.for_each([&](PointIndex z) {
      every_set = every_set && meets_all(s, fx, PointSet::single(y) | PointSet::single(z));
    });
  }
  const bool singleton = meets_all(s, fx, PointSet::single(y));
  if (included != every_set || every_set != singleton) {
    throw InvariantError("closure equivalence conditions disagree for " + s.point_name(x) + ", " + s.point_name(y));
  }
  return {included, every_set, singleton};
}

}  // namespace tts
