#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tts/space.hpp"

namespace tts {

struct GenealogyDataset {
  std::vector<std::pair<std::string, std::string>> edges;  // (advisor, student)
};

struct GenealogyOptions {
  // Ancestor types meet over all descendants of the advisor; when set,
  // only over the advisor's direct students.
  bool direct_students_only = false;
};

struct Street {
  std::string name;
  std::vector<std::string> residents;  // left to right
};

struct Relation {
  std::string name;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct CommunityDataset {
  std::vector<Street> streets;
  std::vector<Relation> relations;
  std::vector<std::string> neighbors{"left", "right"};  // neighbor generator directions
};

struct Predicate {
  std::string name;
  std::string expr;
  std::vector<std::string> implies;
};

struct PredicateTableDataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Predicate> predicates;
};

struct TableOptions {
  bool strictify = false;
};

TypedSpace build_genealogy(const GenealogyDataset& d, const GenealogyOptions& options = {});
TypedSpace build_community(const CommunityDataset& d);
TypedSpace build_table(const PredicateTableDataset& d, const TableOptions& options = {});

// Rows satisfying a predicate expression: `column op constant` joined by
// AND, op one of = != < <= > >= (and the symbols ≠ ≤ ≥). Numeric when both
// sides parse as numbers, string comparison otherwise.
std::vector<bool> evaluate_predicate(const PredicateTableDataset& d, const std::string& expr);

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

GenealogyDataset parse_genealogy_csv(const std::string& text);
// {"edges": [[advisor, student], ...]}
GenealogyDataset parse_genealogy_json(const std::string& text);
CommunityDataset parse_community_json(const std::string& text);
PredicateTableDataset parse_table(const std::string& csv_text, const std::string& predicates_json);

std::string read_file(const std::string& path);

// Named built-ins: "genealogy5", "street5", "street5-both", "street2x3", "courses".
std::vector<std::string> builtin_names();
TypedSpace builtin(const std::string& name);
GenealogyDataset genealogy5_dataset();
CommunityDataset street5_dataset(bool both_directions = false);
CommunityDataset street2x3_dataset();
PredicateTableDataset courses_dataset();

}  // namespace tts
