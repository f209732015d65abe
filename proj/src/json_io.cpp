#include "tts/json_io.hpp"

#include <cstdio>

#include "tts/errors.hpp"
#include "tts/ingest.hpp"

namespace tts {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(0, std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(0, std::string(what) + ": expected a string");
  return j.get<std::string>();
}

PointSet set_from_json(const json& j, const ContextPtr& ctx) {
  if (!j.is_array()) throw ParseError(0, "point set: expected an array of ids");
  PointSet out;
  for (const json& id : j) out.insert(ctx->require_point(as_string(id, "point set")));
  return out;
}

}  // namespace

json to_json(const TypeTerm& t) {
  if (t.is_top()) return {{"top", true}, {"text", "TOP"}};
  const Context& ctx = *t.context();
  json clauses = json::array();
  for (const Clause& c : t.clauses()) {
    json lits = json::array();
    for (const Literal& l : c.literals()) {
      switch (l.kind) {
        case LiteralKind::kGen:
          lits.push_back({{"gen", ctx.poset().elements()[l.index]}});
          break;
        case LiteralKind::kPos:
          lits.push_back({{"pos", ctx.points()[l.index]}});
          break;
        case LiteralKind::kNeg:
          lits.push_back({{"neg", ctx.points()[l.index]}});
          break;
      }
    }
    clauses.push_back(std::move(lits));
  }
  return {{"clauses", std::move(clauses)}, {"text", to_string(t)}};
}

TypeTerm term_from_json(const json& j, const ContextPtr& ctx) {
  if (j.is_string()) return parse_type_expr(j.get<std::string>(), ctx);
  if (!j.is_object()) throw ParseError(0, "type: expected an object or an expression string");
  if (j.contains("top") && j.at("top") == true) return TypeTerm::top(ctx);
  std::vector<Clause> clauses;
  for (const json& jc : field(j, "clauses", "type")) {
    if (!jc.is_array()) throw ParseError(0, "type: clause must be an array");
    Clause c;
    for (const json& lit : jc) {
      if (lit.contains("gen")) {
        const std::string name = as_string(lit.at("gen"), "gen");
        auto idx = ctx->poset().index_of(name);
        if (!idx) throw UnknownIdentifierError(name);
        c.gens |= std::uint64_t{1} << *idx;
      } else if (lit.contains("pos")) {
        c.pos |= std::uint64_t{1} << ctx->require_point(as_string(lit.at("pos"), "pos"));
      } else if (lit.contains("neg")) {
        c.neg |= std::uint64_t{1} << ctx->require_point(as_string(lit.at("neg"), "neg"));
      } else {
        throw ParseError(0, "type: literal needs one of gen, pos, neg");
      }
    }
    clauses.push_back(c);
  }
  return normalize(ctx, std::move(clauses));
}

json set_json(const TypedSpace& s, PointSet set) {
  json out = json::array();
  set.for_each([&](PointIndex i) { out.push_back(s.point_name(i)); });
  return out;
}

json family_json(const TypedSpace& s, const std::vector<OpenId>& members) {
  json out = json::array();
  for (OpenId u : members) out.push_back({{"set", set_json(s, s.open(u))}, {"type", to_string(s.sigma(u))}});
  return out;
}

json to_json(const TypedSpace& s) {
  json leq = json::array();
  for (const auto& [a, b] : s.poset().strict_pairs()) leq.push_back({a, b});
  json opens = json::array();
  for (OpenId u = 0; u < s.open_count(); ++u) {
    opens.push_back({{"set", set_json(s, s.open(u))}, {"type", to_json(s.sigma(u))}});
  }
  json gens = json::array();
  for (const GeneratorSpec& g : s.generators()) {
    gens.push_back({{"name", g.name}, {"set", set_json(s, g.members)}, {"type", to_json(g.type)}});
  }
  return {{"points", s.context()->points()},
          {"poset", {{"elements", s.poset().elements()}, {"leq", std::move(leq)}}},
          {"opens", std::move(opens)},
          {"generators", std::move(gens)}};
}

TypedSpace space_from_json(const json& j) {
  try {
    std::vector<std::string> points;
    for (const json& p : field(j, "points", "space")) points.push_back(as_string(p, "points"));
    const json& poset = field(j, "poset", "space");
    std::vector<std::string> elements;
    for (const json& e : field(poset, "elements", "poset")) elements.push_back(as_string(e, "poset elements"));
    std::vector<std::pair<std::string, std::string>> leq;
    if (poset.contains("leq")) {
      for (const json& pair : poset.at("leq")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError(0, "poset: leq entries are [lower, upper]");
        leq.emplace_back(as_string(pair[0], "leq"), as_string(pair[1], "leq"));
      }
    }
    auto ctx = make_context(Poset(std::move(elements), leq), std::move(points));
    std::vector<GeneratorSpec> gens;
    if (j.contains("generators")) {
      for (const json& g : j.at("generators")) {
        gens.push_back({as_string(field(g, "name", "generator"), "generator name"),
                        set_from_json(field(g, "set", "generator"), ctx),
                        term_from_json(field(g, "type", "generator"), ctx)});
      }
    }
    if (!j.contains("opens")) return generate_topology(ctx, std::move(gens));
    std::vector<std::pair<PointSet, TypeTerm>> typed;
    for (const json& o : j.at("opens")) {
      typed.emplace_back(set_from_json(field(o, "set", "open"), ctx), term_from_json(field(o, "type", "open"), ctx));
    }
    return TypedSpace(ctx, std::move(typed), std::move(gens));
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("space: ") + e.what());
  }
}

TypedSpace load_space(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return build_genealogy(parse_genealogy_csv(text));
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, "space file '" + path + "': " + e.what());
  }
  if (j.is_object() && !j.contains("points")) {
    if (j.contains("streets")) return build_community(parse_community_json(text));
    if (j.contains("edges")) return build_genealogy(parse_genealogy_json(text));
  }
  return space_from_json(j);
}

json to_json(const ScoreTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.population().size(); ++i) {
    rows.push_back({{"subject", t.population()[i].first}, {"value", t.population()[i].second}, {"z", t.z()[i]}});
  }
  return {{"n", t.population().size()}, {"mean", t.mean()}, {"sample_std", t.sample_std()}, {"rows", std::move(rows)}};
}

json to_json(const TypedSpace& s, const ValidationReport& r) {
  json failures = json::array();
  for (const Finding& f : r.failures) {
    json opens = json::array();
    for (OpenId u : f.opens) opens.push_back(set_json(s, s.open(u)));
    failures.push_back({{"condition", f.condition}, {"opens", std::move(opens)}, {"detail", f.detail}});
  }
  return {{"ok", r.ok()}, {"failures", std::move(failures)}};
}

json to_json(const OracleReport& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    json entry{{"name", c.name},
               {"scope", c.scope},
               {"instances", c.instances},
               {"violations", c.violations},
               {"status", c.skipped ? "skipped" : (c.violations.empty() ? "pass" : "fail")}};
    if (c.skipped) entry["skip_reason"] = c.skip_reason;
    if (c.informational) entry["informational"] = true;
    checks.push_back(std::move(entry));
  }
  return {{"passed", r.passed()}, {"checks", std::move(checks)}};
}

std::string space_digest(const TypedSpace& s) {
  const std::string text = to_json(s).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tts
