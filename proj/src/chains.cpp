#include "tts/chains.hpp"

#include <algorithm>
#include <functional>

#include "tts/errors.hpp"

namespace tts {

TypeChain::TypeChain(std::vector<TypeTerm> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) throw PreconditionError("a chain of types needs at least two levels");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const TypeTerm& t = levels_[i];
    if (!t.context() || t.context() != levels_.front().context()) throw ContextMismatchError();
    if (t.is_bottom() || t.is_top()) throw PreconditionError("chain level " + std::to_string(i) + " is BOT or TOP");
    if (i + 1 < levels_.size() && !leq(t, levels_[i + 1])) {
      throw PreconditionError("chain is not ascending at level " + std::to_string(i));
    }
  }
}

TypeChain parse_chain(std::string_view text, const ContextPtr& ctx) {
  std::vector<TypeTerm> levels;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(';', start);
    const std::string_view piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    try {
      levels.push_back(parse_type_expr(piece, ctx));
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), std::string(e.what()));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return TypeChain(std::move(levels));
}

std::string to_string(const TypeChain& c) {
  std::string out;
  for (const TypeTerm& t : c.levels()) {
    if (!out.empty()) out += " ; ";
    out += to_string(t);
  }
  return out;
}

// ---------------------------------------------------------------- neighborhoods

ChainNeighborhoods::ChainNeighborhoods(const TypedSpace& s, TypeChain c) : space_(&s), chain_(std::move(c)) {
  if (chain_.context() != s.context()) throw ContextMismatchError();
  const std::size_t m = s.open_count();
  const auto& levels = chain_.levels();
  in_tc_.assign(m, false);
  in_jc_.assign(m, false);
  base_irreducible_.assign(m, false);

  // Upper families for the levels that can witness irreducibility.
  std::vector<std::vector<bool>> upper;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) upper.push_back(upper_opens(s, levels[i]));

  for (OpenId u = 0; u < m; ++u) {
    if (s.open(u).empty()) continue;
    if (upper[0][u]) base_irreducible_[u] = join_irreducible_within(s, u, upper[0]);
    for (std::size_t i = 0; i + 1 < levels.size() && !in_tc_[u]; ++i) {
      in_tc_[u] = upper[i][u] && leq(s.sigma(u), levels[i + 1]);
    }
    if (!in_tc_[u]) continue;
    tc_.push_back(u);
    for (std::size_t i = 0; i < upper.size() && !in_jc_[u]; ++i) {
      in_jc_[u] = upper[i][u] && (i == 0 ? base_irreducible_[u] : join_irreducible_within(s, u, upper[i]));
    }
    if (in_jc_[u]) jc_.push_back(u);
  }
}

std::vector<OpenId> ChainNeighborhoods::tc_at(PointIndex x) const {
  if (x >= space_->point_count()) throw UnknownPointError(std::to_string(x));
  std::vector<OpenId> out;
  for (OpenId u : tc_) {
    if (space_->open(u).contains(x)) out.push_back(u);
  }
  return out;
}

std::vector<OpenId> ChainNeighborhoods::jc_at(PointIndex x) const {
  if (x >= space_->point_count()) throw UnknownPointError(std::to_string(x));
  std::vector<OpenId> out;
  for (OpenId u : jc_) {
    if (space_->open(u).contains(x)) out.push_back(u);
  }
  return out;
}

PointSet ChainNeighborhoods::jc_intersection(PointIndex x) const {
  PointSet out = space_->all_points();
  for (OpenId u : jc_at(x)) out &= space_->open(u);
  return out;
}

PointSet ChainNeighborhoods::tc_support() const {
  PointSet out;
  for (OpenId u : tc_) out |= space_->open(u);
  return out;
}

PointSet ChainNeighborhoods::jc_support() const {
  PointSet out;
  for (OpenId u : jc_) out |= space_->open(u);
  return out;
}

TypedFamily tc_at(const TypedSpace& s, PointIndex x, const TypeChain& c) {
  ChainNeighborhoods n(s, c);
  return {c.base(), x, n.tc_at(x)};
}

TypedFamily jc_at(const TypedSpace& s, PointIndex x, const TypeChain& c) {
  ChainNeighborhoods n(s, c);
  return {c.base(), x, n.jc_at(x)};
}

// ---------------------------------------------------------------- p-chains

bool in_generator_sublattice(const TypeTerm& t, GeneratorMask generators) {
  return std::all_of(t.clauses().begin(), t.clauses().end(),
                     [&](const Clause& c) { return (c.gens & ~generators) == 0; });
}

bool is_p_chain(const TypeChain& c, std::size_t generator) {
  const ContextPtr& ctx = c.context();
  if (generator >= ctx->poset().size()) throw PreconditionError("unknown generator index");
  const GeneratorMask mask = GeneratorMask{1} << generator;
  for (const TypeTerm& level : c.levels()) {
    if (!in_generator_sublattice(level, mask)) return false;
  }
  return c.levels().back() == TypeTerm::literal(ctx, {LiteralKind::kGen, static_cast<std::uint32_t>(generator)});
}

TypedFamily t_pchain_at(const TypedSpace& s, PointIndex x, GeneratorMask generators) {
  if (generators == 0) throw PreconditionError("generator subset must be nonempty");
  if (x >= s.point_count()) throw UnknownPointError(std::to_string(x));
  const ContextPtr& ctx = s.context();
  std::vector<TypeTerm> gens;
  for (GeneratorMask b = generators; b != 0; b &= b - 1) {
    const auto i = static_cast<std::uint32_t>(std::countr_zero(b));
    if (i >= ctx->poset().size()) throw PreconditionError("unknown generator index");
    gens.push_back(TypeTerm::literal(ctx, {LiteralKind::kGen, i}));
  }
  const TypeTerm ceiling = join_all(ctx, gens);
  TypedFamily f{ceiling, x, {}};
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (!s.open(u).contains(x)) continue;
    if (in_generator_sublattice(s.sigma(u), generators) && leq(s.sigma(u), ceiling)) f.members.push_back(u);
  }
  return f;
}

std::vector<OpenId> pchain_union_tc(const TypedSpace& s, PointIndex x, std::size_t generator) {
  const ContextPtr& ctx = s.context();
  const TypeTerm p = TypeTerm::literal(ctx, {LiteralKind::kGen, static_cast<std::uint32_t>(generator)});
  const GeneratorMask mask = GeneratorMask{1} << generator;
  std::vector<TypeTerm> bases{p};
  for (const TypeTerm& q : realized_types(s).types) {
    if (q != p && in_generator_sublattice(q, mask) && leq(q, p)) bases.push_back(q);
  }
  std::vector<bool> hit(s.open_count(), false);
  for (const TypeTerm& q : bases) {
    ChainNeighborhoods n(s, TypeChain({q, p}));
    for (OpenId u : n.tc_at(x)) hit[u] = true;
  }
  std::vector<OpenId> out;
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (hit[u]) out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------- cover

ChainCover chain_cover(const TypedSpace& s) {
  const RealizedTypes sigma = realized_types(s);
  const std::size_t n = sigma.types.size();
  // Split-node bipartite graph: left i -> right j when types[i] < types[j].
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && sigma.leq[i][j]) adj[i].push_back(j);
    }
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(n, kNone);
  std::vector<std::size_t> match_left(n, kNone);
  std::vector<bool> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = true;
      if (match_right[j] == kNone || augment(match_right[j])) {
        match_right[j] = i;
        match_left[i] = j;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(n, false);
    augment(i);
  }

  ChainCover cover;
  for (std::size_t start = 0; start < n; ++start) {
    if (match_right[start] != kNone) continue;
    std::vector<TypeTerm> levels;
    for (std::size_t cur = start; cur != kNone; cur = match_left[cur]) levels.push_back(sigma.types[cur]);
    if (levels.size() == 1) levels.push_back(levels.front());
    cover.chains.emplace_back(std::move(levels));
  }
  cover.width = cover.chains.size();
  return cover;
}

}  // namespace tts
