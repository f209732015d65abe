// tts: command-line front end for typed topological spaces.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tts/basis.hpp"
#include "tts/chains.hpp"
#include "tts/closure.hpp"
#include "tts/connect.hpp"
#include "tts/errors.hpp"
#include "tts/ingest.hpp"
#include "tts/json_io.hpp"
#include "tts/oracle.hpp"
#include "tts/stats.hpp"

using nlohmann::json;
using namespace tts;

namespace {

struct Options {
  std::string space;
  std::string chain;
  std::string p;
  std::string x;
  std::string y;
  std::string set;
  std::string dataset;
  std::string predicates;
  std::string kind;
  std::string builtin_name;
  std::string output;
  std::string stats_kind = "pchain";
  bool stable = false;
  bool strict = false;
  bool strictify_table = false;
  bool direct_students = false;
  bool two_witness = false;
  bool csv = false;
  std::size_t budget_points = 0;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kUnknownIdentifier:
      return 2;
    case ErrorKind::kValidation:
    case ErrorKind::kInvariant:
      return 1;
    default:
      return 3;
  }
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kUnknownIdentifier: return "unknown-identifier";
    case ErrorKind::kContextMismatch: return "context-mismatch";
    case ErrorKind::kBoundExceeded: return "bound-exceeded";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kInvariant: return "invariant";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kNoVariance: return "no-variance";
    case ErrorKind::kUnknownPoint: return "unknown-point";
  }
  return "error";
}

TypedSpace open_space(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return builtin(arg.substr(prefix.size()));
  return load_space(arg);
}

OracleBudget budget_of(const Options& o) {
  OracleBudget b = OracleBudget::from_env();
  if (o.budget_points > 0) b.max_points = o.budget_points;
  return b;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write '" + o.output + "'");
  out << text;
}

json command_echo(const std::string& name, const Options& o) {
  json args = json::object();
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) args[key] = v;
  };
  put("space", o.space);
  put("chain", o.chain);
  put("p", o.p);
  put("x", o.x);
  put("y", o.y);
  put("set", o.set);
  if (name == "stats") args["kind"] = o.stats_kind;
  if (o.strict) args["strict"] = true;
  if (o.two_witness) args["two_witness"] = true;
  if (o.budget_points > 0) args["budget_points"] = o.budget_points;
  return {{"name", name}, {"args", std::move(args)}};
}

json space_summary(const TypedSpace& s) {
  return {{"digest", space_digest(s)}, {"points", s.point_count()}, {"opens", s.open_count()},
          {"generators", s.poset().size()}, {"strict", is_strictly_typed(s).strict}};
}

json density_json(const TypedSpace& s, const DensityReport& d) {
  json classes = json::array();
  for (PointSet c : d.classes) classes.push_back(set_json(s, c));
  json maximal = json::array();
  for (std::size_t i : d.maximal) maximal.push_back(set_json(s, d.classes[i]));
  return {{"density", d.density},
          {"witness", set_json(s, d.witness)},
          {"exceptional", set_json(s, d.exceptional)},
          {"classes", std::move(classes)},
          {"maximal_classes", std::move(maximal)},
          {"oracle_checked", d.oracle_checked}};
}

json pair_json(const TypedSpace& s, std::pair<OpenId, OpenId> p) {
  return json::array({set_json(s, s.open(p.first)), set_json(s, s.open(p.second))});
}

// Returns the result payload and the exit code for a successful run.
std::pair<json, int> run(const std::string& cmd, const Options& o, const TypedSpace& s) {
  auto chain = [&] {
    if (o.chain.empty()) throw PreconditionError("--chain is required");
    return parse_chain(o.chain, s.context());
  };
  auto point = [&](const std::string& id, const char* flag) {
    if (id.empty()) throw PreconditionError(std::string(flag) + " is required");
    return s.require_point(id);
  };

  if (cmd == "validate") {
    const ValidationReport r = validate_type_mapping(s);
    json out = to_json(s, r);
    bool ok = r.ok();
    if (o.strict) {
      const StrictnessResult st = is_strictly_typed(s);
      out["strict"] = st.strict;
      if (st.counterexample) out["strict_counterexample"] = pair_json(s, *st.counterexample);
      ok = ok && st.strict;
    }
    return {out, ok ? 0 : 1};
  }
  if (cmd == "basis") {
    if (o.p.empty()) throw PreconditionError("--p is required");
    const TypeTerm p = parse_type_expr(o.p, s.context());
    std::optional<PointIndex> at;
    if (!o.x.empty()) at = s.require_point(o.x);
    return {{{"t_geq", family_json(s, t_geq(s, p, at).members)}, {"j_geq", family_json(s, j_geq(s, p, at).members)}},
            0};
  }
  if (cmd == "nbhd") {
    ChainNeighborhoods n(s, chain());
    const PointIndex x = point(o.x, "--x");
    return {{{"tc", family_json(s, n.tc_at(x))},
             {"jc", family_json(s, n.jc_at(x))},
             {"jc_intersection", n.jc_at(x).empty() ? json(nullptr) : set_json(s, n.jc_intersection(x))}},
            0};
  }
  if (cmd == "closure") {
    ChainNeighborhoods n(s, chain());
    const PointSet a = parse_point_list(s, o.set);
    const ClosureReport r = c_closure(n, a);
    json witnesses = json::array();
    for (const ClosureWitness& w : r.witnesses) {
      witnesses.push_back({{"point", s.point_name(w.point)},
                           {"exceptional", w.exceptional},
                           {"jc_intersection", w.exceptional ? json(nullptr) : set_json(s, w.jc_intersection)}});
    }
    return {{{"input", set_json(s, a)},
             {"closure", set_json(s, r.closure)},
             {"exceptional", set_json(s, e_c(n))},
             {"witnesses", std::move(witnesses)}},
            0};
  }
  if (cmd == "dense") {
    ChainNeighborhoods n(s, chain());
    return {density_json(s, min_c_dense(n, budget_of(o))), 0};
  }
  if (cmd == "connect") {
    ChainNeighborhoods n(s, chain());
    if (!o.set.empty()) {
      const ConnectivityResult r = is_c_connected(n, parse_point_list(s, o.set));
      json out{{"set", set_json(s, parse_point_list(s, o.set))}, {"connected", r.connected}};
      if (r.separator) out["separator"] = pair_json(s, *r.separator);
      return {out, 0};
    }
    if (o.x.empty() && o.y.empty()) {
      const Components c = c_components(n);
      json parts = json::array();
      for (PointSet p : c.parts) parts.push_back(set_json(s, p));
      return {{{"components", std::move(parts)}, {"remainder", set_json(s, c.remainder)}}, 0};
    }
    OracleBudget b = OracleBudget::for_connections();
    if (o.budget_points > 0) b.max_points = o.budget_points;
    const ConnectionResult r = find_connection(n, point(o.x, "--x"), point(o.y, "--y"), b);
    json out{{"status", to_string(r.status)}, {"note", r.note}};
    if (r.certificate) {
      json path = json::array();
      for (OpenId u : r.certificate->path) path.push_back(set_json(s, s.open(u)));
      out["certificate"] = {{"set", set_json(s, r.certificate->set)}, {"path", std::move(path)}};
    }
    return {out, 0};
  }
  if (cmd == "stats") {
    std::optional<ScoreTable> table;
    if (o.stats_kind == "pair") {
      table.emplace(pair_affinity(s, o.two_witness));
    } else {
      if (o.p.empty()) throw PreconditionError("--p (a generator name) is required");
      const std::size_t g = require_generator(s, o.p);
      if (o.stats_kind == "pchain") {
        table.emplace(pchain_stats(s, g));
      } else if (o.stats_kind == "activity") {
        table.emplace(point_activity(s, g));
      } else {
        throw PreconditionError("--kind must be pchain, activity or pair");
      }
    }
    json out = to_json(*table);
    if (o.csv) out["csv"] = table->to_csv();
    return {out, 0};
  }
  if (cmd == "oracle") {
    const OracleReport r = oracle_check_space(s, budget_of(o));
    return {to_json(r), r.passed() ? 0 : 1};
  }
  throw PreconditionError("unknown command " + cmd);
}

TypedSpace build_space(const Options& o) {
  if (!o.builtin_name.empty()) return builtin(o.builtin_name);
  if (o.dataset.empty()) throw PreconditionError("build needs --dataset or --builtin");
  const std::string text = read_file(o.dataset);
  if (o.kind == "genealogy") return build_genealogy(parse_genealogy_csv(text), {o.direct_students});
  if (o.kind == "community") return build_community(parse_community_json(text));
  if (o.kind == "table") {
    if (o.predicates.empty()) throw PreconditionError("table datasets need --predicates");
    return build_table(parse_table(text, read_file(o.predicates)), {o.strictify_table});
  }
  throw PreconditionError("--kind must be genealogy, community or table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed topological spaces on finite sets"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_space) {
    if (needs_space) sub->add_option("space", o.space, "Space JSON, dataset file or builtin:NAME")->required();
    sub->add_option("-o,--output", o.output, "Write the report to a file");
    sub->add_flag("--stable", o.stable, "Omit timing for byte-identical output");
  };

  CLI::App* build = app.add_subcommand("build", "Build a space from a dataset");
  add_common(build, false);
  build->add_option("--dataset", o.dataset, "Dataset file");
  build->add_option("--kind", o.kind, "genealogy | community | table");
  build->add_option("--predicates", o.predicates, "Predicates JSON for table datasets");
  build->add_option("--builtin", o.builtin_name, "Built-in fixture name");
  build->add_flag("--strictify", o.strictify_table, "Add point literals so the table space is strictly typed");
  build->add_flag("--direct-students", o.direct_students, "Ancestor types meet over direct students only");

  CLI::App* validate = app.add_subcommand("validate", "Check the type-mapping conditions");
  add_common(validate, true);
  validate->add_flag("--strict", o.strict, "Also require a strictly typed space");

  CLI::App* basis = app.add_subcommand("basis", "Opens of type at least p and their irreducibles");
  add_common(basis, true);
  basis->add_option("--p", o.p, "Type expression");
  basis->add_option("--x", o.x, "Restrict to opens containing this point");

  CLI::App* nbhd = app.add_subcommand("nbhd", "Chain neighborhood system of a point");
  add_common(nbhd, true);
  nbhd->add_option("--chain", o.chain, "Semicolon-separated chain of types");
  nbhd->add_option("--x", o.x, "Point id");

  CLI::App* closure = app.add_subcommand("closure", "Chain closure of a set");
  add_common(closure, true);
  closure->add_option("--chain", o.chain, "Semicolon-separated chain of types");
  closure->add_option("--set", o.set, "Comma-separated point ids");

  CLI::App* dense = app.add_subcommand("dense", "Chain density and a minimum dense set");
  add_common(dense, true);
  dense->add_option("--chain", o.chain, "Semicolon-separated chain of types");
  dense->add_option("--budget-points", o.budget_points, "Largest point count for the exhaustive check");

  CLI::App* connect = app.add_subcommand("connect", "Connectivity: --set, --x/--y, or components");
  add_common(connect, true);
  connect->add_option("--chain", o.chain, "Semicolon-separated chain of types");
  connect->add_option("--set", o.set, "Test this set for c-connectedness");
  connect->add_option("--x", o.x, "First endpoint");
  connect->add_option("--y", o.y, "Second endpoint");
  connect->add_option("--budget-points", o.budget_points, "Largest point count for the exhaustive check");

  CLI::App* stats = app.add_subcommand("stats", "Mean, sample deviation and z-scores");
  add_common(stats, true);
  stats->add_option("--kind", o.stats_kind, "pchain | activity | pair")->capture_default_str();
  stats->add_option("--p", o.p, "Generator name");
  stats->add_flag("--two-witness", o.two_witness, "Pair types may come from two different opens");
  stats->add_flag("--csv", o.csv, "Emit the subject,value,z table as CSV instead of JSON");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force re-verification of a space");
  add_common(oracle, true);
  oracle->add_option("--budget-points", o.budget_points, "Largest point count for exhaustive set checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string cmd = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (cmd == "build") {
      const TypedSpace s = build_space(o);
      emit(o, to_json(s).dump(2) + "\n");
      return 0;
    }
    const TypedSpace s = open_space(o.space);
    auto [result, code] = run(cmd, o, s);
    if (cmd == "stats" && o.csv) {
      emit(o, result.at("csv").get<std::string>());
      return code;
    }
    json report{{"command", command_echo(cmd, o)}, {"space", space_summary(s)}, {"result", std::move(result)}};
    if (!o.stable) {
      const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
      report["timing"] = {{"elapsed_ms", elapsed.count()}};
    }
    emit(o, report.dump(2) + "\n");
    return code;
  } catch (const Error& e) {
    json err{{"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json err{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 3;
  }
}
