#include "tts/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tts/errors.hpp"

namespace tts {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

TypeTerm conj(const ContextPtr& ctx, std::uint64_t gens, PointSet pos) {
  Clause c;
  c.gens = gens;
  c.pos = pos.bits();
  return normalize(ctx, {c});
}

std::uint64_t gen_bit(const Poset& poset, const std::string& name) {
  auto idx = poset.index_of(name);
  if (!idx) throw UnknownIdentifierError(name);
  return std::uint64_t{1} << *idx;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, std::string(what) + ": " + e.what());
  }
}

template <class T>
T get_field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(0, std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string(what) + ": field '" + key + "': " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- genealogy

TypedSpace build_genealogy(const GenealogyDataset& d, const GenealogyOptions& options) {
  std::vector<std::string> points;
  auto index_of = [&](const std::string& id) {
    auto it = std::find(points.begin(), points.end(), id);
    if (it != points.end()) return static_cast<PointIndex>(it - points.begin());
    points.push_back(id);
    return points.size() - 1;
  };
  std::vector<std::pair<PointIndex, PointIndex>> edges;
  for (const auto& [advisor, student] : d.edges) {
    if (advisor.empty() || student.empty()) throw ValidationError("genealogy: empty identifier");
    if (advisor == student) throw ValidationError("genealogy: cycle detected at '" + advisor + "'");
    const PointIndex a = index_of(advisor);
    const PointIndex s = index_of(student);
    edges.emplace_back(a, s);
  }
  const std::size_t n = points.size();
  if (n > kMaxPoints) throw BoundExceededError("genealogy: more than 64 people");
  std::vector<PointSet> students(n);
  std::vector<PointSet> advisors(n);
  for (const auto& [a, s] : edges) {
    students[a].insert(s);
    advisors[s].insert(a);
  }
  // Transitive descendants; a cycle shows up as a point reaching itself.
  std::vector<PointSet> desc(n);
  for (PointIndex x = 0; x < n; ++x) {
    PointSet frontier = students[x];
    while (!frontier.empty()) {
      desc[x] |= frontier;
      PointSet next;
      frontier.for_each([&](PointIndex y) { next |= students[y]; });
      frontier = next - desc[x];
    }
    if (desc[x].contains(x)) throw ValidationError("genealogy: cycle detected at '" + points[x] + "'");
  }
  std::vector<PointSet> anc(n);
  for (PointIndex x = 0; x < n; ++x) {
    desc[x].for_each([&](PointIndex y) { anc[y].insert(x); });
  }

  auto ctx = make_context(Poset({"anc", "desc"}, {}), points);
  const std::uint64_t anc_bit = gen_bit(ctx->poset(), "anc");
  const std::uint64_t desc_bit = gen_bit(ctx->poset(), "desc");
  std::vector<GeneratorSpec> specs;
  for (PointIndex x = 0; x < n; ++x) {
    if (!advisors[x].empty()) {
      PointSet scope;
      advisors[x].for_each([&](PointIndex a) { scope |= options.direct_students_only ? students[a] : desc[a]; });
      specs.push_back({points[x] + ":anc", anc[x], conj(ctx, anc_bit, scope | PointSet::single(x))});
    }
    if (!students[x].empty()) {
      specs.push_back({points[x] + ":desc", desc[x], conj(ctx, desc_bit, anc[x] | PointSet::single(x))});
    }
  }
  return generate_topology(ctx, std::move(specs));
}

GenealogyDataset parse_genealogy_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError(0, "genealogy: empty file");
  const auto& header = rows.front();
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw ParseError(0, "genealogy: header lacks column '" + name + "'");
  };
  const std::size_t a = col("advisor");
  const std::size_t s = col("student");
  GenealogyDataset d;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() == 1 && trim(rows[r][0]).empty()) continue;
    if (rows[r].size() != header.size()) {
      throw ParseError(r, "genealogy: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " fields");
    }
    d.edges.emplace_back(trim(rows[r][a]), trim(rows[r][s]));
  }
  return d;
}

GenealogyDataset parse_genealogy_json(const std::string& text) {
  const json j = parse_json(text, "genealogy");
  GenealogyDataset d;
  for (const auto& edge : get_field<std::vector<std::vector<std::string>>>(j, "edges", "genealogy")) {
    if (edge.size() != 2) throw ParseError(0, "genealogy: edges are [advisor, student] pairs");
    d.edges.emplace_back(edge[0], edge[1]);
  }
  return d;
}

// ---------------------------------------------------------------- community

TypedSpace build_community(const CommunityDataset& d) {
  std::vector<std::string> points;
  std::set<std::string> seen;
  for (const Street& st : d.streets) {
    for (const std::string& r : st.residents) {
      if (!seen.insert(r).second) throw ValidationError("community: duplicate resident '" + r + "'");
      points.push_back(r);
    }
  }
  std::vector<std::string> names;
  for (const Street& st : d.streets) names.push_back(st.name);
  for (const std::string& dir : d.neighbors) {
    if (dir != "left" && dir != "right") throw ValidationError("community: unknown neighbor direction '" + dir + "'");
    names.push_back(dir);
  }
  for (const Relation& rel : d.relations) names.push_back(rel.name);
  auto ctx = make_context(Poset(names, {}), points);
  const Poset& poset = ctx->poset();
  auto point = [&](const std::string& id) {
    auto idx = ctx->point_index(id);
    if (!idx) throw ValidationError("community: relation mentions unknown resident '" + id + "'");
    return *idx;
  };

  std::vector<GeneratorSpec> specs;
  for (const Street& st : d.streets) {
    PointSet all;
    for (const std::string& r : st.residents) all.insert(point(r));
    specs.push_back({st.name, all, conj(ctx, gen_bit(poset, st.name), {})});
    const std::size_t k = st.residents.size();
    for (const std::string& dir : d.neighbors) {
      const std::uint64_t bit = gen_bit(poset, dir);
      for (std::size_t i = 0; i < k; ++i) {
        PointSet ray;
        for (std::size_t j = 0; j < k; ++j) {
          if (dir == "right" ? j >= i : j <= i) ray.insert(point(st.residents[j]));
        }
        const PointIndex x = point(st.residents[i]);
        specs.push_back({st.residents[i] + ":" + dir, ray, conj(ctx, bit, PointSet::single(x))});
      }
    }
  }
  for (const Relation& rel : d.relations) {
    const std::uint64_t bit = gen_bit(poset, rel.name);
    std::vector<PointSet> partners(points.size());
    for (const auto& [a, b] : rel.pairs) {
      const PointIndex x = point(a);
      const PointIndex y = point(b);
      if (x == y) throw ValidationError("community: relation '" + rel.name + "' pairs '" + a + "' with itself");
      partners[x].insert(y);
      partners[y].insert(x);
    }
    for (PointIndex x = 0; x < points.size(); ++x) {
      if (partners[x].empty()) continue;
      specs.push_back({points[x] + ":" + rel.name, partners[x] | PointSet::single(x),
                       conj(ctx, bit, PointSet::single(x))});
    }
  }
  return generate_topology(ctx, std::move(specs));
}

CommunityDataset parse_community_json(const std::string& text) {
  const json j = parse_json(text, "community");
  CommunityDataset d;
  for (const json& st : get_field<json>(j, "streets", "community")) {
    d.streets.push_back(
        {get_field<std::string>(st, "name", "street"), get_field<std::vector<std::string>>(st, "residents", "street")});
  }
  if (j.contains("relations")) {
    for (const json& rel : j.at("relations")) {
      Relation r{get_field<std::string>(rel, "name", "relation"), {}};
      for (const auto& pair : get_field<std::vector<std::vector<std::string>>>(rel, "pairs", "relation")) {
        if (pair.size() != 2) throw ParseError(0, "relation '" + r.name + "': pairs must have two members");
        r.pairs.emplace_back(pair[0], pair[1]);
      }
      d.relations.push_back(std::move(r));
    }
  }
  if (j.contains("neighbors")) d.neighbors = get_field<std::vector<std::string>>(j, "neighbors", "community");
  return d;
}

// ---------------------------------------------------------------- tables

namespace {

struct Comparison {
  std::size_t column;
  std::string op;
  std::string constant;
};

std::optional<double> as_number(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::vector<Comparison> parse_predicate(const PredicateTableDataset& d, const std::string& expr) {
  static const std::array<std::pair<const char*, const char*>, 9> kOps{{{"<=", "<="},
                                                                        {">=", ">="},
                                                                        {"!=", "!="},
                                                                        {"\xE2\x89\xA0", "!="},
                                                                        {"\xE2\x89\xA4", "<="},
                                                                        {"\xE2\x89\xA5", ">="},
                                                                        {"=", "="},
                                                                        {"<", "<"},
                                                                        {">", ">"}}};
  std::vector<Comparison> out;
  std::size_t start = 0;
  while (start <= expr.size()) {
    std::size_t split = expr.find(" AND ", start);
    const std::string part = trim(std::string_view(expr).substr(start, split == std::string::npos ? std::string::npos : split - start));
    // Earliest operator; at equal position the longer spelling wins (table order).
    std::size_t best_pos = std::string::npos;
    std::size_t best_len = 0;
    const char* best_op = nullptr;
    for (const auto& [spelling, canonical] : kOps) {
      const std::size_t pos = part.find(spelling);
      const std::size_t len = std::char_traits<char>::length(spelling);
      if (pos != std::string::npos && (pos < best_pos || (pos == best_pos && len > best_len))) {
        best_pos = pos;
        best_len = len;
        best_op = canonical;
      }
    }
    if (!best_op) throw ParseError(start, "predicate '" + expr + "': no comparison operator in '" + part + "'");
    const std::string column = trim(std::string_view(part).substr(0, best_pos));
    std::string constant = trim(std::string_view(part).substr(best_pos + best_len));
    if (column.empty() || constant.empty()) {
      throw ParseError(start, "predicate '" + expr + "': comparison '" + part + "' needs a column and a constant");
    }
    if (constant.size() >= 2 && (constant.front() == '\'' || constant.front() == '"') &&
        constant.back() == constant.front()) {
      constant = constant.substr(1, constant.size() - 2);
    }
    auto it = std::find(d.columns.begin(), d.columns.end(), column);
    if (it == d.columns.end()) throw UnknownIdentifierError(column);
    out.push_back({static_cast<std::size_t>(it - d.columns.begin()), best_op, constant});
    if (split == std::string::npos) break;
    start = split + 5;
  }
  return out;
}

bool compare(const std::string& lhs, const std::string& op, const std::string& rhs) {
  const auto a = as_number(lhs);
  const auto b = as_number(rhs);
  int cmp = 0;
  if (a && b) {
    cmp = *a < *b ? -1 : (*a > *b ? 1 : 0);
  } else {
    cmp = lhs.compare(rhs);
    cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
  }
  if (op == "=") return cmp == 0;
  if (op == "!=") return cmp != 0;
  if (op == "<") return cmp < 0;
  if (op == "<=") return cmp <= 0;
  if (op == ">") return cmp > 0;
  return cmp >= 0;
}

std::vector<std::string> row_ids(const PredicateTableDataset& d) {
  auto it = std::find(d.columns.begin(), d.columns.end(), "id");
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    ids.push_back(it == d.columns.end() ? std::to_string(r) : d.rows[r][it - d.columns.begin()]);
  }
  return ids;
}

}  // namespace

std::vector<bool> evaluate_predicate(const PredicateTableDataset& d, const std::string& expr) {
  const auto comparisons = parse_predicate(d, expr);
  std::vector<bool> out;
  for (const auto& row : d.rows) {
    if (row.size() != d.columns.size()) throw ValidationError("table: row width differs from the header");
    bool ok = true;
    for (const Comparison& c : comparisons) ok = ok && compare(row[c.column], c.op, c.constant);
    out.push_back(ok);
  }
  return out;
}

TypedSpace build_table(const PredicateTableDataset& d, const TableOptions& options) {
  const std::vector<std::string> ids = row_ids(d);
  std::vector<std::vector<bool>> selected;
  std::set<std::string> declared;
  for (const Predicate& p : d.predicates) {
    if (!declared.insert(p.name).second) throw ValidationError("table: duplicate predicate '" + p.name + "'");
    selected.push_back(evaluate_predicate(d, p.expr));
  }
  std::vector<std::string> kept;
  std::vector<std::pair<std::string, std::string>> order;
  for (std::size_t i = 0; i < d.predicates.size(); ++i) {
    const Predicate& p = d.predicates[i];
    const bool nonempty = std::find(selected[i].begin(), selected[i].end(), true) != selected[i].end();
    if (nonempty) kept.push_back(p.name);
    for (const std::string& q : p.implies) {
      auto j = std::find_if(d.predicates.begin(), d.predicates.end(), [&](const Predicate& c) { return c.name == q; });
      if (j == d.predicates.end()) throw UnknownIdentifierError(q);
      const auto& target = selected[j - d.predicates.begin()];
      for (std::size_t r = 0; r < d.rows.size(); ++r) {
        if (selected[i][r] && !target[r]) {
          throw ValidationError("table: implication " + p.name + " => " + q + " fails at row '" + ids[r] + "'");
        }
      }
      if (nonempty) order.emplace_back(p.name, q);
    }
  }
  auto ctx = make_context(Poset(kept, order), ids);
  std::vector<GeneratorSpec> specs;
  for (std::size_t i = 0; i < d.predicates.size(); ++i) {
    PointSet rows;
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      if (selected[i][r]) rows.insert(r);
    }
    if (rows.empty()) continue;
    const std::string& name = d.predicates[i].name;
    specs.push_back({name, rows, conj(ctx, gen_bit(ctx->poset(), name), {})});
  }
  TypedSpace space = generate_topology(ctx, std::move(specs));
  return options.strictify ? strictify(space) : space;
}

PredicateTableDataset parse_table(const std::string& csv_text, const std::string& predicates_json) {
  const auto rows = parse_csv(csv_text);
  if (rows.empty()) throw ParseError(0, "table: empty file");
  PredicateTableDataset d;
  for (const auto& h : rows.front()) d.columns.push_back(trim(h));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() == 1 && trim(rows[r][0]).empty()) continue;
    std::vector<std::string> row;
    for (const auto& f : rows[r]) row.push_back(trim(f));
    d.rows.push_back(std::move(row));
  }
  json j = parse_json(predicates_json, "predicates");
  if (j.is_object() && j.contains("predicates")) j = j.at("predicates");
  if (!j.is_array()) throw ParseError(0, "predicates: expected an array");
  for (const json& p : j) {
    Predicate pred{get_field<std::string>(p, "name", "predicate"), get_field<std::string>(p, "expr", "predicate"), {}};
    if (p.contains("implies")) pred.implies = get_field<std::vector<std::string>>(p, "implies", "predicate");
    d.predicates.push_back(std::move(pred));
  }
  return d;
}

// ---------------------------------------------------------------- files

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    any = true;
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw ParseError(text.size(), "csv: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- built-ins

GenealogyDataset genealogy5_dataset() { return {{{"B", "S"}, {"S", "H"}, {"H", "C"}, {"C", "W"}}}; }

CommunityDataset street5_dataset(bool both_directions) {
  CommunityDataset d;
  d.streets.push_back({"main", {"r1", "r2", "r3", "r4", "r5"}});
  d.neighbors = both_directions ? std::vector<std::string>{"left", "right"} : std::vector<std::string>{"right"};
  return d;
}

CommunityDataset street2x3_dataset() {
  CommunityDataset d;
  d.streets.push_back({"a", {"a1", "a2", "a3"}});
  d.streets.push_back({"b", {"b1", "b2", "b3"}});
  d.neighbors = {"right"};
  return d;
}

PredicateTableDataset courses_dataset() {
  PredicateTableDataset d;
  d.columns = {"id", "fee", "level", "dept"};
  d.rows = {{"c1", "150", "1", "math"},
            {"c2", "450", "2", "math"},
            {"c3", "900", "3", "cs"},
            {"c4", "1200", "4", "cs"},
            {"c5", "180", "2", "cs"}};
  d.predicates = {{"cheap", "fee < 200", {"affordable"}},
                  {"affordable", "fee < 1000", {}},
                  {"advanced", "level >= 3", {}},
                  {"cs", "dept = cs", {}},
                  {"capstone", "id = c4", {"advanced"}},
                  {"free", "fee < 0", {}}};
  return d;
}

std::vector<std::string> builtin_names() { return {"genealogy5", "street5", "street5-both", "street2x3", "courses"}; }

TypedSpace builtin(const std::string& name) {
  if (name == "genealogy5") return build_genealogy(genealogy5_dataset());
  if (name == "street5") return build_community(street5_dataset());
  if (name == "street5-both") return build_community(street5_dataset(true));
  if (name == "street2x3") return build_community(street2x3_dataset());
  if (name == "courses") return build_table(courses_dataset());
  throw UnknownIdentifierError(name);
}

}  // namespace tts
