#include "tts/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>

#include "tts/errors.hpp"

namespace tts {

namespace {

bool reserved_word(std::string_view s) { return s == "BOT" || s == "TOP"; }

void check_same_context(const TypeTerm& a, const TypeTerm& b) {
  if (!a.context() || a.context() != b.context()) throw ContextMismatchError();
}

std::vector<std::uint32_t> clause_key(const Clause& c) {
  std::vector<std::uint32_t> key;
  for (const Literal& l : c.literals()) key.push_back(l.sort_key());
  return key;
}

// Adds `c` unless an existing clause absorbs it; drops clauses `c` absorbs.
// Clauses are saturated, so absorption is plain literal-set inclusion.
bool add_absorbing(std::vector<Clause>& work, const Clause& c) {
  for (const Clause& w : work) {
    if (w.subset_of(c)) return false;
  }
  std::erase_if(work, [&](const Clause& w) { return c.subset_of(w); });
  work.push_back(c);
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Poset

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& relation) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw ValidationError("poset: duplicate generator name");
  }
  if (elements.size() > kMaxGenerators) {
    throw BoundExceededError("poset: at most 64 generators are supported");
  }
  for (const auto& e : elements) {
    if (e.empty() || reserved_word(e)) throw ValidationError("poset: invalid generator name '" + e + "'");
  }
  elements_ = std::move(elements);
  const std::size_t n = elements_.size();
  up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) up_[i] = std::uint64_t{1} << i;
  for (const auto& [a, b] : relation) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia) throw UnknownIdentifierError(a);
    if (!ib) throw UnknownIdentifierError(b);
    up_[*ia] |= std::uint64_t{1} << *ib;
  }
  // Warshall closure on bit rows.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((up_[i] >> k) & 1U) up_[i] |= up_[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq(i, j) && leq(j, i)) {
        throw ValidationError("poset: order is not antisymmetric between '" + elements_[i] + "' and '" +
                              elements_[j] + "'");
      }
    }
  }
}

std::optional<std::size_t> Poset::index_of(std::string_view name) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), name);
  if (it == elements_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::uint64_t Poset::up_closure(std::uint64_t mask) const {
  std::uint64_t out = 0;
  for (std::uint64_t b = mask; b != 0; b &= b - 1) out |= up_[std::countr_zero(b)];
  return out;
}

std::uint64_t Poset::minimal_elements(std::uint64_t mask) const {
  std::uint64_t out = mask;
  for (std::uint64_t b = mask; b != 0; b &= b - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    // Everything strictly above i is not minimal.
    out &= ~(up_[i] & ~(std::uint64_t{1} << i));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Poset::strict_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (i != j && leq(i, j)) out.emplace_back(elements_[i], elements_[j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Context

Context::Context(Poset poset, std::vector<std::string> points)
    : poset_(std::move(poset)), points_(std::move(points)) {
  if (points_.size() > kMaxPoints) throw BoundExceededError("context: at most 64 points are supported");
  std::vector<std::string> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("context: duplicate point id");
  }
  for (const auto& p : points_) {
    if (p.empty()) throw ValidationError("context: empty point id");
  }
}

std::optional<PointIndex> Context::point_index(std::string_view id) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == id) return i;
  }
  return std::nullopt;
}

PointIndex Context::require_point(std::string_view id) const {
  auto i = point_index(id);
  if (!i) throw UnknownPointError(std::string(id));
  return *i;
}

ContextPtr make_context(Poset poset, std::vector<std::string> points) {
  return std::make_shared<const Context>(std::move(poset), std::move(points));
}

// ---------------------------------------------------------------- Clause

Clause Clause::of(Literal lit) {
  Clause c;
  const std::uint64_t bit = std::uint64_t{1} << lit.index;
  switch (lit.kind) {
    case LiteralKind::kGen: c.gens = bit; break;
    case LiteralKind::kPos: c.pos = bit; break;
    case LiteralKind::kNeg: c.neg = bit; break;
  }
  return c;
}

std::vector<Literal> Clause::literals() const {
  std::vector<Literal> out;
  for (std::uint64_t b = gens; b != 0; b &= b - 1) {
    out.push_back({LiteralKind::kGen, static_cast<std::uint32_t>(std::countr_zero(b))});
  }
  for (std::uint64_t b = pos | neg; b != 0; b &= b - 1) {
    const auto i = static_cast<std::uint32_t>(std::countr_zero(b));
    if ((pos >> i) & 1U) out.push_back({LiteralKind::kPos, i});
    if ((neg >> i) & 1U) out.push_back({LiteralKind::kNeg, i});
  }
  return out;
}

// ---------------------------------------------------------------- TypeTerm

TypeTerm TypeTerm::bottom(ContextPtr ctx) {
  TypeTerm t;
  t.ctx_ = std::move(ctx);
  return t;
}

TypeTerm TypeTerm::top(ContextPtr ctx) {
  TypeTerm t;
  t.ctx_ = std::move(ctx);
  t.clauses_.push_back(Clause{});
  return t;
}

TypeTerm TypeTerm::literal(ContextPtr ctx, Literal lit) {
  return normalize(ctx, {Clause::of(lit)});
}

TypeTerm TypeTerm::generator(ContextPtr ctx, std::string_view name) {
  auto i = ctx->poset().index_of(name);
  if (!i) throw UnknownIdentifierError(std::string(name));
  return literal(std::move(ctx), {LiteralKind::kGen, static_cast<std::uint32_t>(*i)});
}

TypeTerm TypeTerm::point(ContextPtr ctx, std::string_view id, bool positive) {
  auto i = ctx->point_index(id);
  if (!i) throw UnknownIdentifierError(std::string(id));
  return literal(std::move(ctx),
                 {positive ? LiteralKind::kPos : LiteralKind::kNeg, static_cast<std::uint32_t>(*i)});
}

std::size_t TypeTerm::hash() const {
  std::size_t h = std::hash<const void*>{}(ctx_.get());
  for (const Clause& c : clauses_) {
    for (std::uint64_t w : {c.gens, c.pos, c.neg}) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

TypeTerm normalize(const ContextPtr& ctx, std::vector<Clause> raw) {
  const Poset& poset = ctx->poset();
  std::vector<Clause> work;
  for (Clause c : raw) {
    if (c.contradictory()) continue;
    c.gens = poset.up_closure(c.gens);
    add_absorbing(work, c);
  }

  // Iterated consensus: a pair clashing on exactly one point yields the
  // meet of the remaining literals. At the fixpoint `work` holds every
  // prime implicant.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
        const Clause& a = work[i];
        const Clause& b = work[j];
        const std::uint64_t clash = (a.pos & b.neg) | (a.neg & b.pos);
        if (std::popcount(clash) != 1) continue;
        Clause r{a.gens | b.gens, (a.pos | b.pos) & ~clash, (a.neg | b.neg) & ~clash};
        changed = add_absorbing(work, r);
      }
    }
  }

  for (Clause& c : work) c.gens = poset.minimal_elements(c.gens);
  std::vector<std::pair<std::vector<std::uint32_t>, Clause>> keyed;
  keyed.reserve(work.size());
  for (const Clause& c : work) keyed.emplace_back(clause_key(c), c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  TypeTerm t;
  t.ctx_ = ctx;
  for (auto& [key, c] : keyed) t.clauses_.push_back(c);
  return t;
}

TypeTerm meet(const TypeTerm& a, const TypeTerm& b) {
  check_same_context(a, b);
  std::vector<Clause> raw;
  raw.reserve(a.clauses().size() * b.clauses().size());
  for (const Clause& x : a.clauses()) {
    for (const Clause& y : b.clauses()) raw.push_back(x & y);
  }
  return normalize(a.context(), std::move(raw));
}

TypeTerm join(const TypeTerm& a, const TypeTerm& b) {
  check_same_context(a, b);
  std::vector<Clause> raw = a.clauses();
  raw.insert(raw.end(), b.clauses().begin(), b.clauses().end());
  return normalize(a.context(), std::move(raw));
}

TypeTerm meet_all(const ContextPtr& ctx, std::span<const TypeTerm> terms) {
  TypeTerm acc = TypeTerm::top(ctx);
  for (const TypeTerm& t : terms) acc = meet(acc, t);
  return acc;
}

TypeTerm join_all(const ContextPtr& ctx, std::span<const TypeTerm> terms) {
  std::vector<Clause> raw;
  for (const TypeTerm& t : terms) {
    if (t.context() != ctx) throw ContextMismatchError();
    raw.insert(raw.end(), t.clauses().begin(), t.clauses().end());
  }
  return normalize(ctx, std::move(raw));
}

bool leq(const TypeTerm& a, const TypeTerm& b) {
  check_same_context(a, b);
  const Poset& poset = a.context()->poset();
  std::vector<Clause> upper = b.clauses();
  for (Clause& c : upper) c.gens = poset.up_closure(c.gens);
  for (Clause lower : a.clauses()) {
    lower.gens = poset.up_closure(lower.gens);
    const bool covered =
        std::any_of(upper.begin(), upper.end(), [&](const Clause& u) { return u.subset_of(lower); });
    if (!covered) return false;
  }
  return true;
}

// ---------------------------------------------------------------- semantics

std::size_t LiteralSupport::size() const {
  return static_cast<std::size_t>(std::popcount(gens) + std::popcount(points));
}

LiteralSupport support(const TypeTerm& t) {
  LiteralSupport s;
  for (const Clause& c : t.clauses()) {
    s.gens |= c.gens;
    s.points |= c.pos | c.neg;
  }
  return s;
}

bool eval(const TypeTerm& t, const Valuation& v) {
  return std::any_of(t.clauses().begin(), t.clauses().end(), [&](const Clause& c) {
    return (c.gens & ~v.gens) == 0 && (c.pos & ~v.points) == 0 && (c.neg & v.points) == 0;
  });
}

std::vector<Valuation> enumerate_valuations(const Context& ctx, const LiteralSupport& restrict_to,
                                            std::size_t bound) {
  if (restrict_to.size() > bound) {
    throw BoundExceededError("valuation enumeration over " + std::to_string(restrict_to.size()) +
                             " literals exceeds the bound of " + std::to_string(bound) +
                             "; narrow the query");
  }
  const Poset& poset = ctx.poset();
  std::vector<std::uint64_t> up_sets;
  // Submask enumeration of the relevant generators, keeping induced up-sets.
  const std::uint64_t g = restrict_to.gens;
  std::uint64_t s = 0;
  while (true) {
    bool closed = true;
    for (std::uint64_t b = s; b != 0 && closed; b &= b - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(b));
      closed = (poset.up_of(i) & g & ~s) == 0;
    }
    if (closed) up_sets.push_back(s);
    if (s == g) break;
    s = (s - g) & g;
  }
  std::vector<Valuation> out;
  const std::uint64_t p = restrict_to.points;
  std::uint64_t q = 0;
  while (true) {
    for (std::uint64_t u : up_sets) out.push_back({u, q});
    if (q == p) break;
    q = (q - p) & p;
  }
  return out;
}

bool leq_semantic(const TypeTerm& a, const TypeTerm& b, std::size_t bound) {
  check_same_context(a, b);
  for (const Valuation& v : enumerate_valuations(*a.context(), support(a) | support(b), bound)) {
    if (eval(a, v) && !eval(b, v)) return false;
  }
  return true;
}

bool is_join_irreducible(const TypeTerm& t, std::size_t bound) {
  const Context& ctx = *t.context();
  const bool fast = t.clauses().size() == 1 &&
                    (t.clauses().front().pos | t.clauses().front().neg) == ctx.all_points_mask();

  LiteralSupport scope = support(t);
  scope.points = ctx.all_points_mask();
  std::vector<Valuation> sat;
  for (const Valuation& v : enumerate_valuations(ctx, scope, bound)) {
    if (eval(t, v)) sat.push_back(v);
  }
  bool semantic = !sat.empty();
  if (semantic) {
    // Point literals are complemented, so points are compared by equality;
    // generator parts must have a unique minimum.
    const std::uint64_t pts = sat.front().points;
    std::uint64_t common = ~std::uint64_t{0};
    for (const Valuation& v : sat) {
      if (v.points != pts) semantic = false;
      common &= v.gens;
    }
    if (semantic) {
      semantic = std::any_of(sat.begin(), sat.end(), [&](const Valuation& v) { return v.gens == common; });
    }
  }
  if (fast != semantic) {
    throw InvariantError("join-irreducibility fast path disagrees with valuation check for " + to_string(t));
  }
  return semantic;
}

std::vector<TypeTerm> filter_upset(const TypeTerm& t, std::span<const TypeTerm> candidates) {
  if (t.is_bottom()) throw PreconditionError("filter_upset: a filter never contains the bottom");
  std::vector<TypeTerm> out;
  for (const TypeTerm& q : candidates) {
    if (leq(t, q)) out.push_back(q);
  }
  return out;
}

// ---------------------------------------------------------------- text

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  TypeTerm run() {
    TypeTerm t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  TypeTerm term() {
    TypeTerm acc = clause();
    while (accept('|')) acc = join(acc, clause());
    return acc;
  }

  TypeTerm clause() {
    TypeTerm acc = literal();
    while (accept('&')) acc = meet(acc, literal());
    return acc;
  }

  TypeTerm literal() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TypeTerm t = term();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return t;
    }
    if (c == '@' || c == '~') {
      bool positive = true;
      if (c == '~') {
        positive = false;
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '@') throw ParseError(pos_, "expected '@' after '~'");
      }
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
      if (pos_ == start) throw ParseError(start, "expected point id");
      const std::string id(text_.substr(start, pos_ - start));
      auto idx = ctx_->point_index(id);
      if (!idx) throw UnknownIdentifierError("@" + id);
      return TypeTerm::literal(ctx_, {positive ? LiteralKind::kPos : LiteralKind::kNeg,
                                      static_cast<std::uint32_t>(*idx)});
    }
    if (name_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "BOT") return TypeTerm::bottom(ctx_);
      if (name == "TOP") return TypeTerm::top(ctx_);
      auto idx = ctx_->poset().index_of(name);
      if (!idx) throw UnknownIdentifierError(name);
      return TypeTerm::literal(ctx_, {LiteralKind::kGen, static_cast<std::uint32_t>(*idx)});
    }
    throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

TypeTerm parse_type_expr(std::string_view text, const ContextPtr& ctx) { return Parser(text, ctx).run(); }

std::string to_string(const Context& ctx, const Clause& c) {
  std::string out;
  for (const Literal& l : c.literals()) {
    if (!out.empty()) out += " & ";
    switch (l.kind) {
      case LiteralKind::kGen: out += ctx.poset().elements()[l.index]; break;
      case LiteralKind::kPos: out += "@" + ctx.points()[l.index]; break;
      case LiteralKind::kNeg: out += "~@" + ctx.points()[l.index]; break;
    }
  }
  return out;
}

std::string to_string(const TypeTerm& t) {
  if (t.is_bottom()) return "BOT";
  if (t.is_top()) return "TOP";
  std::string out;
  for (const Clause& c : t.clauses()) {
    if (!out.empty()) out += " | ";
    out += to_string(*t.context(), c);
  }
  return out;
}

}  // namespace tts
