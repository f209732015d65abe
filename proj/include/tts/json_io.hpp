#pragma once

#include <string>

#include <json.hpp>

#include "tts/chains.hpp"
#include "tts/closure.hpp"
#include "tts/connect.hpp"
#include "tts/oracle.hpp"
#include "tts/space.hpp"
#include "tts/stats.hpp"

namespace tts {

// {"clauses": [[{"gen": "anc"}, {"pos": "W"}, {"neg": "B"}], ...]} with a
// "text" rendering alongside; TOP is {"top": true}, BOT has no clauses.
// A plain string is accepted on input and parsed as a type expression.
nlohmann::json to_json(const TypeTerm& t);
TypeTerm term_from_json(const nlohmann::json& j, const ContextPtr& ctx);

// {"points", "poset": {"elements", "leq"}, "opens": [{"set", "type"}],
//  "generators": [{"name", "set", "type"}]}. Without "opens" the topology
// is generated from the generators.
nlohmann::json to_json(const TypedSpace& s);
TypedSpace space_from_json(const nlohmann::json& j);
// Also accepts dataset files: a genealogy CSV (.csv), a genealogy JSON
// ({"edges"}) or a community JSON ({"streets"}).
TypedSpace load_space(const std::string& path);

nlohmann::json set_json(const TypedSpace& s, PointSet set);
nlohmann::json family_json(const TypedSpace& s, const std::vector<OpenId>& members);

nlohmann::json to_json(const ScoreTable& t);
nlohmann::json to_json(const TypedSpace& s, const ValidationReport& r);
nlohmann::json to_json(const OracleReport& r);

// Hex FNV-1a over the compact canonical space JSON.
std::string space_digest(const TypedSpace& s);

}  // namespace tts
