#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tts/basis.hpp"
#include "tts/space.hpp"

namespace tts {

// Ascending chain p_0 <= ... <= p_{k-1} with k >= 2 and no level equal to
// BOT or TOP.
class TypeChain {
 public:
  explicit TypeChain(std::vector<TypeTerm> levels);

  const std::vector<TypeTerm>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  const TypeTerm& base() const { return levels_.front(); }
  const ContextPtr& context() const { return levels_.front().context(); }

  bool operator==(const TypeChain&) const = default;

 private:
  std::vector<TypeTerm> levels_;
};

// Semicolon-separated type expressions, lowest level first.
TypeChain parse_chain(std::string_view text, const ContextPtr& ctx);
std::string to_string(const TypeChain& c);

// The c-neighborhood families of one chain over one space, computed once.
// T_c(X) holds nonempty opens whose type is sandwiched between consecutive
// levels; J_c(X) keeps those that are p_i-join-irreducible for some level
// i < k-1 (the irreducibility level is not tied to the sandwich level).
class ChainNeighborhoods {
 public:
  ChainNeighborhoods(const TypedSpace& s, TypeChain c);

  const TypedSpace& space() const { return *space_; }
  const TypeChain& chain() const { return chain_; }

  bool in_tc(OpenId u) const { return in_tc_[u]; }
  bool in_jc(OpenId u) const { return in_jc_[u]; }
  const std::vector<OpenId>& tc_members() const { return tc_; }
  const std::vector<OpenId>& jc_members() const { return jc_; }

  std::vector<OpenId> tc_at(PointIndex x) const;
  std::vector<OpenId> jc_at(PointIndex x) const;
  // Intersection of J_c(x); the whole point set when J_c(x) is empty.
  PointSet jc_intersection(PointIndex x) const;
  // Union of T_c(X).
  PointSet tc_support() const;
  // Union of J_c(X).
  PointSet jc_support() const;

  // U is join-irreducible relative to the base level p_0.
  bool base_irreducible(OpenId u) const { return base_irreducible_[u]; }

 private:
  const TypedSpace* space_;
  TypeChain chain_;
  std::vector<bool> in_tc_;
  std::vector<bool> in_jc_;
  std::vector<bool> base_irreducible_;
  std::vector<OpenId> tc_;
  std::vector<OpenId> jc_;
};

TypedFamily tc_at(const TypedSpace& s, PointIndex x, const TypeChain& c);
TypedFamily jc_at(const TypedSpace& s, PointIndex x, const TypeChain& c);

// Every level lies in L({p}, X) and the top level is p itself.
bool is_p_chain(const TypeChain& c, std::size_t generator);

// Generator mask for the subset P' of the poset.
using GeneratorMask = std::uint64_t;

// Opens containing x whose type uses only generators from P' (plus point
// literals) and lies below the join of P'.
TypedFamily t_pchain_at(const TypedSpace& s, PointIndex x, GeneratorMask generators);

// Union of tc_at(x, "q <= p") over realized types q in L({p}, X) with
// q <= p, plus the chain "p <= p". Comparing with t_pchain_at exposes
// opens sandwiched by a p-chain whose own type leaves L({p}, X).
std::vector<OpenId> pchain_union_tc(const TypedSpace& s, PointIndex x, std::size_t generator);

bool in_generator_sublattice(const TypeTerm& t, GeneratorMask generators);

struct ChainCover {
  std::vector<TypeChain> chains;
  std::size_t width = 0;
};

// Minimum chain partition of the realized-type poset via maximum bipartite
// matching; singleton chains are padded by repeating their level.
ChainCover chain_cover(const TypedSpace& s);

}  // namespace tts
