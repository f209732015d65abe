#include "tts/space.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "tts/errors.hpp"

namespace tts {

TypedSpace::TypedSpace(ContextPtr ctx, std::vector<std::pair<PointSet, TypeTerm>> typed_opens,
                       std::vector<GeneratorSpec> generators)
    : ctx_(std::move(ctx)), generators_(std::move(generators)) {
  const PointSet universe = PointSet::first_n(ctx_->point_count());
  std::sort(typed_opens.begin(), typed_opens.end(),
            [](const auto& a, const auto& b) { return open_order_less(a.first, b.first); });
  for (auto& [set, type] : typed_opens) {
    if (!set.subset_of(universe)) throw ValidationError("space: open set mentions an unknown point");
    if (type.context() != ctx_) throw ContextMismatchError();
    if (!index_.emplace(set, opens_.size()).second) throw ValidationError("space: duplicate open set");
    opens_.push_back(set);
    sigma_.push_back(std::move(type));
  }
  for (const GeneratorSpec& g : generators_) {
    if (g.type.context() != ctx_) throw ContextMismatchError();
  }
}

std::optional<OpenId> TypedSpace::find_open(PointSet s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TypedSpace TypedSpace::with_sigma(OpenId id, TypeTerm type) const {
  TypedSpace copy = *this;
  if (type.context() != ctx_) throw ContextMismatchError();
  copy.sigma_.at(id) = std::move(type);
  return copy;
}

// ---------------------------------------------------------------- topology

namespace {

struct IntersectionSearch {
  const std::vector<GeneratorSpec>& specs;
  std::unordered_map<PointSet, std::vector<Clause>, PointSetHash> by_set;

  // Depth-first over generator subsets in index order. Extending M by g is
  // skipped when the intersection does not shrink: the meet only gets
  // smaller and every further extension is reached without g.
  void visit(std::size_t next, PointSet inter, const TypeTerm& meet_so_far) {
    auto& clauses = by_set[inter];
    clauses.insert(clauses.end(), meet_so_far.clauses().begin(), meet_so_far.clauses().end());
    for (std::size_t g = next; g < specs.size(); ++g) {
      const PointSet narrowed = inter & specs[g].members;
      if (narrowed.empty() || narrowed == inter) continue;
      visit(g + 1, narrowed, meet(meet_so_far, specs[g].type));
    }
  }
};

}  // namespace

TypedSpace generate_topology(const ContextPtr& ctx, std::vector<GeneratorSpec> specs,
                             const TopologyOptions& options) {
  const std::size_t n = ctx->point_count();
  if (n > options.max_points) {
    throw BoundExceededError("space: " + std::to_string(n) + " points exceed the bound of " +
                             std::to_string(options.max_points));
  }
  const PointSet universe = PointSet::first_n(n);
  for (const GeneratorSpec& g : specs) {
    if (g.type.context() != ctx) throw ContextMismatchError();
    if (!g.members.subset_of(universe)) throw ValidationError("generator '" + g.name + "' has unknown points");
    if (g.type.is_top()) throw ValidationError("generator '" + g.name + "' is typed TOP");
    if (!g.members.empty() && g.type.is_bottom()) {
      throw ValidationError("generator '" + g.name + "' is nonempty but typed BOT");
    }
  }

  // Least type carried by each nonempty generator intersection.
  IntersectionSearch search{specs, {}};
  for (std::size_t g = 0; g < specs.size(); ++g) {
    if (specs[g].members.empty()) continue;
    search.visit(g + 1, specs[g].members, specs[g].type);
  }
  std::vector<std::pair<PointSet, TypeTerm>> base;
  for (auto& [set, clauses] : search.by_set) base.emplace_back(set, normalize(ctx, std::move(clauses)));
  std::sort(base.begin(), base.end(), [](const auto& a, const auto& b) { return open_order_less(a.first, b.first); });

  // Union closure of the intersection family.
  std::unordered_set<PointSet, PointSetHash> seen{PointSet{}};
  std::vector<PointSet> family{PointSet{}};
  for (const auto& [set, type] : base) {
    const std::size_t existing = family.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const PointSet u = family[i] | set;
      if (seen.insert(u).second) {
        family.push_back(u);
        if (family.size() > options.max_opens) {
          throw BoundExceededError("space: topology exceeds " + std::to_string(options.max_opens) + " opens");
        }
      }
    }
  }

  std::vector<std::pair<PointSet, TypeTerm>> typed;
  typed.reserve(family.size() + 1);
  for (PointSet u : family) {
    std::vector<Clause> raw;
    for (const auto& [set, type] : base) {
      if (set.subset_of(u)) raw.insert(raw.end(), type.clauses().begin(), type.clauses().end());
    }
    typed.emplace_back(u, normalize(ctx, std::move(raw)));
  }
  if (!seen.contains(universe)) {
    std::vector<TypeTerm> all;
    for (const GeneratorSpec& g : specs) all.push_back(g.type);
    typed.emplace_back(universe, join_all(ctx, all));
  }

  TypedSpace space(ctx, std::move(typed), std::move(specs));
  ValidationReport report = validate_type_mapping(space);
  if (!report.ok()) throw ValidationError("generated space is not a typed space: " + report.summary(space));
  return space;
}

// ---------------------------------------------------------------- validation

std::string ValidationReport::summary(const TypedSpace& s) const {
  constexpr std::size_t kShown = 8;
  std::string out;
  for (std::size_t i = 0; i < failures.size() && i < kShown; ++i) {
    const Finding& f = failures[i];
    if (!out.empty()) out += "; ";
    out += f.condition;
    for (OpenId id : f.opens) out += " " + format_set(s, s.open(id));
    if (!f.detail.empty()) out += " (" + f.detail + ")";
  }
  if (failures.size() > kShown) out += "; ... " + std::to_string(failures.size() - kShown) + " more";
  return out;
}

ValidationReport validate_type_mapping(const TypedSpace& s) {
  ValidationReport report;
  const std::size_t m = s.open_count();
  auto fail = [&](std::string condition, std::vector<OpenId> opens, std::string detail = {}) {
    report.failures.push_back({std::move(condition), std::move(opens), std::move(detail)});
  };

  if (!s.find_open(PointSet{})) fail("topology", {}, "empty set is not open");
  if (!s.find_open(s.all_points())) fail("topology", {}, "whole point set is not open");
  for (OpenId u = 0; u < m; ++u) {
    const bool empty = s.open(u).empty();
    if (empty != s.sigma(u).is_bottom()) fail("empty-iff-bottom", {u});
    if (s.sigma(u).is_top()) fail("never-top", {u});
  }
  for (OpenId u = 0; u < m; ++u) {
    for (OpenId v = u + 1; v < m; ++v) {
      const PointSet a = s.open(u);
      const PointSet b = s.open(v);
      auto inter = s.find_open(a & b);
      auto uni = s.find_open(a | b);
      if (!inter) fail("topology", {u, v}, "intersection is not open");
      if (!uni) fail("topology", {u, v}, "union is not open");
      for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
        if (s.open(x).subset_of(s.open(y)) && !leq(s.sigma(x), s.sigma(y))) fail("monotone", {x, y});
      }
      if (inter && !leq(s.sigma(*inter), meet(s.sigma(u), s.sigma(v)))) fail("meet-bound", {u, v});
      if (uni && !leq(join(s.sigma(u), s.sigma(v)), s.sigma(*uni))) fail("join-bound", {u, v});
    }
  }
  return report;
}

StrictnessResult is_strictly_typed(const TypedSpace& s) {
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (s.open(u).empty()) continue;
    for (OpenId v = 0; v < s.open_count(); ++v) {
      if (!s.open(u).proper_subset_of(s.open(v))) continue;
      if (!lt(s.sigma(u), s.sigma(v))) return {false, std::pair{u, v}};
    }
  }
  return {};
}

TypedSpace strictify(const TypedSpace& s) {
  // The augmentation is not monotone against an untouched X in general, so
  // spaces that are already strict are returned as they are.
  if (is_strictly_typed(s).strict) return s;
  const ContextPtr& ctx = s.context();
  const PointSet universe = s.all_points();
  std::vector<std::pair<PointSet, TypeTerm>> typed;
  for (OpenId u = 0; u < s.open_count(); ++u) {
    const PointSet set = s.open(u);
    if (set.empty() || set == universe) {
      typed.emplace_back(set, s.sigma(u));
      continue;
    }
    Clause outside;
    outside.neg = (universe - set).bits();
    typed.emplace_back(set, join(s.sigma(u), normalize(ctx, {outside})));
  }
  TypedSpace out(ctx, std::move(typed), s.generators());
  ValidationReport report = validate_type_mapping(out);
  if (!report.ok()) throw ValidationError("strictify: result is not a typed space: " + report.summary(out));
  StrictnessResult strict = is_strictly_typed(out);
  if (!strict.strict) {
    const auto [u, v] = *strict.counterexample;
    throw ValidationError("strictify: still not strict for " + format_set(out, out.open(u)) + " within " +
                          format_set(out, out.open(v)));
  }
  return out;
}

bool forces(const TypedSpace& s, const TypeTerm& p, PointIndex x) {
  if (x >= s.point_count()) throw UnknownPointError(std::to_string(x));
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (s.open(u).contains(x) && s.sigma(u) == p) return true;
  }
  return false;
}

std::optional<std::size_t> RealizedTypes::find(const TypeTerm& t) const {
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i] == t) return i;
  }
  return std::nullopt;
}

RealizedTypes realized_types(const TypedSpace& s) {
  RealizedTypes r;
  std::unordered_map<TypeTerm, std::size_t, TypeTermHash> index;
  r.type_of_open.assign(s.open_count(), static_cast<std::size_t>(-1));
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (s.open(u).empty()) continue;
    auto [it, inserted] = index.emplace(s.sigma(u), r.types.size());
    if (inserted) r.types.push_back(s.sigma(u));
    r.type_of_open[u] = it->second;
  }
  const std::size_t n = r.types.size();
  r.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.leq[i][j] = leq(r.types[i], r.types[j]);
  }
  return r;
}

std::string format_set(const TypedSpace& s, PointSet set) {
  std::string out = "{";
  bool first = true;
  set.for_each([&](PointIndex i) {
    if (!first) out += ",";
    out += s.point_name(i);
    first = false;
  });
  return out + "}";
}

PointSet parse_point_list(const TypedSpace& s, std::string_view list) {
  PointSet out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) out.insert(s.require_point(item));
    start = end + 1;
  }
  return out;
}

}  // namespace tts
