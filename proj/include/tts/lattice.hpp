#pragma once

// Bounded distributive lattice generated by a poset of named generators and
// complemented point literals. Elements are kept in a canonical
// join-of-meets form (the complete set of prime implicants), so semantic
// equality coincides with structural equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tts/point_set.hpp"

namespace tts {

inline constexpr std::size_t kMaxGenerators = 64;
inline constexpr std::size_t kDefaultValuationBound = 20;

class Poset {
 public:
  Poset() = default;

  // `leq` lists pairs (a, b) meaning a <= b. The reflexive-transitive closure
  // is taken; a cycle between distinct elements is rejected.
  Poset(std::vector<std::string> elements,
        const std::vector<std::pair<std::string, std::string>>& leq);

  std::size_t size() const { return elements_.size(); }
  // Sorted by name; the position is the generator index.
  const std::vector<std::string>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool leq(std::size_t a, std::size_t b) const { return (up_[a] >> b) & 1U; }
  std::uint64_t up_of(std::size_t a) const { return up_[a]; }
  std::uint64_t up_closure(std::uint64_t mask) const;
  std::uint64_t minimal_elements(std::uint64_t mask) const;

  // Strict pairs (a < b) of the closed relation, sorted by name.
  std::vector<std::pair<std::string, std::string>> strict_pairs() const;

  bool operator==(const Poset&) const = default;

 private:
  std::vector<std::string> elements_;
  std::vector<std::uint64_t> up_;
};

// Ambient data shared by every term: the generator poset and the ordered
// point set.
class Context {
 public:
  Context(Poset poset, std::vector<std::string> points);

  const Poset& poset() const { return poset_; }
  const std::vector<std::string>& points() const { return points_; }
  std::size_t point_count() const { return points_.size(); }
  std::uint64_t all_points_mask() const { return PointSet::first_n(points_.size()).bits(); }

  std::optional<PointIndex> point_index(std::string_view id) const;
  // Throws UnknownPointError.
  PointIndex require_point(std::string_view id) const;

 private:
  Poset poset_;
  std::vector<std::string> points_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(Poset poset, std::vector<std::string> points);

enum class LiteralKind : std::uint8_t { kGen, kPos, kNeg };

struct Literal {
  LiteralKind kind;
  std::uint32_t index;

  // Generators first (by name), then points by index with the positive
  // literal ahead of the negative one.
  std::uint32_t sort_key() const {
    switch (kind) {
      case LiteralKind::kGen: return index;
      case LiteralKind::kPos: return 64 + 2 * index;
      case LiteralKind::kNeg: return 65 + 2 * index;
    }
    return 0;
  }
  auto operator<=>(const Literal& o) const { return sort_key() <=> o.sort_key(); }
  bool operator==(const Literal& o) const { return sort_key() == o.sort_key(); }
};

// A meet of literals, stored as three bit masks.
struct Clause {
  std::uint64_t gens = 0;
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  static Clause of(Literal lit);

  bool contradictory() const { return (pos & neg) != 0; }
  bool empty() const { return gens == 0 && pos == 0 && neg == 0; }
  // Literal-set inclusion: every literal of *this occurs in `other`.
  bool subset_of(const Clause& other) const {
    return (gens & ~other.gens) == 0 && (pos & ~other.pos) == 0 && (neg & ~other.neg) == 0;
  }
  Clause operator&(const Clause& o) const { return {gens | o.gens, pos | o.pos, neg | o.neg}; }
  std::vector<Literal> literals() const;

  bool operator==(const Clause&) const = default;
};

class TypeTerm {
 public:
  // Bottom of a null context; only useful as a placeholder.
  TypeTerm() = default;

  static TypeTerm bottom(ContextPtr ctx);
  static TypeTerm top(ContextPtr ctx);
  static TypeTerm literal(ContextPtr ctx, Literal lit);
  static TypeTerm generator(ContextPtr ctx, std::string_view name);
  static TypeTerm point(ContextPtr ctx, std::string_view id, bool positive = true);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool is_bottom() const { return clauses_.empty(); }
  bool is_top() const { return clauses_.size() == 1 && clauses_.front().empty(); }

  // Structural equality of canonical forms within one context.
  bool operator==(const TypeTerm& o) const { return ctx_ == o.ctx_ && clauses_ == o.clauses_; }

  std::size_t hash() const;

 private:
  friend TypeTerm normalize(const ContextPtr& ctx, std::vector<Clause> raw);

  ContextPtr ctx_;
  std::vector<Clause> clauses_;
};

struct TypeTermHash {
  std::size_t operator()(const TypeTerm& t) const { return t.hash(); }
};

// Canonical form of the join of `raw` clauses: contradictory clauses are
// dropped, generator sets are saturated upward, consensus on complementary
// point literals is closed, absorbed clauses are removed and each clause
// keeps only its minimal generators.
TypeTerm normalize(const ContextPtr& ctx, std::vector<Clause> raw);

TypeTerm meet(const TypeTerm& a, const TypeTerm& b);
TypeTerm join(const TypeTerm& a, const TypeTerm& b);
TypeTerm meet_all(const ContextPtr& ctx, std::span<const TypeTerm> terms);
TypeTerm join_all(const ContextPtr& ctx, std::span<const TypeTerm> terms);

// Order of the lattice. Decided clause-wise against the canonical form of
// `b`, which is complete because `b` lists all of its prime implicants.
bool leq(const TypeTerm& a, const TypeTerm& b);
inline bool lt(const TypeTerm& a, const TypeTerm& b) { return leq(a, b) && !(a == b); }

// Literals occurring in a term (or pair of terms).
struct LiteralSupport {
  std::uint64_t gens = 0;
  std::uint64_t points = 0;

  std::size_t size() const;
  LiteralSupport operator|(const LiteralSupport& o) const { return {gens | o.gens, points | o.points}; }
};
LiteralSupport support(const TypeTerm& t);

// `gens` is the set of true generators (an up-set), `points` the set of
// points x with x's true; ~x's evaluates to the complement.
struct Valuation {
  std::uint64_t gens = 0;
  std::uint64_t points = 0;
  bool operator==(const Valuation&) const = default;
};

bool eval(const TypeTerm& t, const Valuation& v);

// All admissible valuations of the sub-context spanned by `restrict_to`:
// generator parts are the up-sets of the induced subposet, point parts are
// free. Literals outside `restrict_to` are false.
std::vector<Valuation> enumerate_valuations(const Context& ctx, const LiteralSupport& restrict_to,
                                            std::size_t bound = kDefaultValuationBound);

// Semantic order: eval(a, v) <= eval(b, v) for every admissible valuation
// over the literals of a and b.
bool leq_semantic(const TypeTerm& a, const TypeTerm& b, std::size_t bound = kDefaultValuationBound);

bool is_join_irreducible(const TypeTerm& t, std::size_t bound = kDefaultValuationBound);

// Candidates q with t <= q, in input order.
std::vector<TypeTerm> filter_upset(const TypeTerm& t, std::span<const TypeTerm> candidates);

// Grammar:
//   term    := clause ('|' clause)*
//   clause  := literal ('&' literal)*
//   literal := NAME | '@' ID | '~@' ID | '(' term ')' | BOT | TOP
TypeTerm parse_type_expr(std::string_view text, const ContextPtr& ctx);

std::string to_string(const TypeTerm& t);
std::string to_string(const Context& ctx, const Clause& c);

}  // namespace tts
