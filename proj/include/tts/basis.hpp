#pragma once

#include <optional>
#include <vector>

#include "tts/space.hpp"

namespace tts {

// Opens of type at least `anchor`, optionally restricted to those
// containing one point. Members are sorted open ids.
struct TypedFamily {
  TypeTerm anchor;
  std::optional<PointIndex> at;
  std::vector<OpenId> members;

  PointSet union_of(const TypedSpace& s) const;
};

// Membership flags over all opens for T_{>=p}: p <= sigma(U).
std::vector<bool> upper_opens(const TypedSpace& s, const TypeTerm& p);

TypedFamily t_geq(const TypedSpace& s, const TypeTerm& p, std::optional<PointIndex> at = std::nullopt);

// U is not the union of two opens of type >= p that both differ from U.
bool is_p_join_irreducible(const TypedSpace& s, OpenId u, const TypeTerm& p);
// Dual: U is not the intersection of two such opens.
bool is_p_meet_irreducible(const TypedSpace& s, OpenId u, const TypeTerm& p);

// Same test against precomputed `upper_opens(s, p)`; no precondition checks.
bool join_irreducible_within(const TypedSpace& s, OpenId u, const std::vector<bool>& upper);

TypedFamily j_geq(const TypedSpace& s, const TypeTerm& p, std::optional<PointIndex> at = std::nullopt);

// Every member of J_{>=p} contained in U. Throws InvariantError if they do
// not cover U.
std::vector<OpenId> join_decompose(const TypedSpace& s, OpenId u, const TypeTerm& p);

}  // namespace tts
