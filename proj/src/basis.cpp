#include "tts/basis.hpp"

#include "tts/errors.hpp"

namespace tts {

namespace {

void require_anchor(const TypedSpace& s, OpenId u, const TypeTerm& p) {
  if (p.is_bottom()) throw PreconditionError("anchor type must not be BOT");
  if (u >= s.open_count()) throw PreconditionError("unknown open id");
  if (s.open(u).empty()) throw PreconditionError("open set must be nonempty");
  if (!leq(p, s.sigma(u))) {
    throw PreconditionError("anchor " + to_string(p) + " is not below the type of " + format_set(s, s.open(u)));
  }
}

}  // namespace

PointSet TypedFamily::union_of(const TypedSpace& s) const {
  PointSet out;
  for (OpenId id : members) out |= s.open(id);
  return out;
}

std::vector<bool> upper_opens(const TypedSpace& s, const TypeTerm& p) {
  std::vector<bool> out(s.open_count(), false);
  for (OpenId u = 0; u < s.open_count(); ++u) out[u] = leq(p, s.sigma(u));
  return out;
}

TypedFamily t_geq(const TypedSpace& s, const TypeTerm& p, std::optional<PointIndex> at) {
  if (p.is_bottom()) throw PreconditionError("anchor type must not be BOT");
  if (at && *at >= s.point_count()) throw UnknownPointError(std::to_string(*at));
  TypedFamily f{p, at, {}};
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (at && !s.open(u).contains(*at)) continue;
    if (leq(p, s.sigma(u))) f.members.push_back(u);
  }
  return f;
}

bool join_irreducible_within(const TypedSpace& s, OpenId u, const std::vector<bool>& upper) {
  const PointSet target = s.open(u);
  std::vector<PointSet> parts;
  for (OpenId w = 0; w < s.open_count(); ++w) {
    if (upper[w] && s.open(w).proper_subset_of(target)) parts.push_back(s.open(w));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if ((parts[i] | parts[j]) == target) return false;
    }
  }
  return true;
}

bool is_p_join_irreducible(const TypedSpace& s, OpenId u, const TypeTerm& p) {
  require_anchor(s, u, p);
  return join_irreducible_within(s, u, upper_opens(s, p));
}

bool is_p_meet_irreducible(const TypedSpace& s, OpenId u, const TypeTerm& p) {
  require_anchor(s, u, p);
  const PointSet target = s.open(u);
  std::vector<PointSet> parts;
  for (OpenId w = 0; w < s.open_count(); ++w) {
    if (target.proper_subset_of(s.open(w)) && leq(p, s.sigma(w))) parts.push_back(s.open(w));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if ((parts[i] & parts[j]) == target) return false;
    }
  }
  return true;
}

TypedFamily j_geq(const TypedSpace& s, const TypeTerm& p, std::optional<PointIndex> at) {
  TypedFamily f = t_geq(s, p, at);
  const std::vector<bool> upper = upper_opens(s, p);
  std::erase_if(f.members, [&](OpenId u) { return s.open(u).empty() || !join_irreducible_within(s, u, upper); });
  return f;
}

std::vector<OpenId> join_decompose(const TypedSpace& s, OpenId u, const TypeTerm& p) {
  if (u >= s.open_count() || !leq(p, s.sigma(u))) {
    throw PreconditionError("open set is not in the family of type >= " + to_string(p));
  }
  const TypedFamily irreducible = j_geq(s, p);
  std::vector<OpenId> out;
  PointSet covered;
  for (OpenId v : irreducible.members) {
    if (s.open(v).subset_of(s.open(u))) {
      out.push_back(v);
      covered |= s.open(v);
    }
  }
  if (covered != s.open(u)) {
    throw InvariantError("irreducible members inside " + format_set(s, s.open(u)) + " only cover " +
                         format_set(s, covered));
  }
  return out;
}

}  // namespace tts
