#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tts/lattice.hpp"
#include "tts/point_set.hpp"

namespace tts {

inline constexpr std::size_t kDefaultMaxOpens = std::size_t{1} << 16;

struct GeneratorSpec {
  std::string name;
  PointSet members;
  TypeTerm type;
};

// A finite topology with a type attached to every open set. Opens are kept
// sorted by open_order_less, so the empty set is always open 0.
class TypedSpace {
 public:
  // No validation beyond structural sanity (distinct opens, one type per
  // open, matching contexts); use validate_type_mapping for the rest.
  TypedSpace(ContextPtr ctx, std::vector<std::pair<PointSet, TypeTerm>> typed_opens,
             std::vector<GeneratorSpec> generators = {});

  const ContextPtr& context() const { return ctx_; }
  const Poset& poset() const { return ctx_->poset(); }
  std::size_t point_count() const { return ctx_->point_count(); }
  PointSet all_points() const { return PointSet::first_n(point_count()); }
  const std::string& point_name(PointIndex i) const { return ctx_->points()[i]; }
  PointIndex require_point(std::string_view id) const { return ctx_->require_point(id); }

  std::size_t open_count() const { return opens_.size(); }
  const std::vector<PointSet>& opens() const { return opens_; }
  PointSet open(OpenId id) const { return opens_[id]; }
  const TypeTerm& sigma(OpenId id) const { return sigma_[id]; }
  std::optional<OpenId> find_open(PointSet s) const;

  const std::vector<GeneratorSpec>& generators() const { return generators_; }

  // Copy with one type replaced; used to build corrupted fixtures.
  TypedSpace with_sigma(OpenId id, TypeTerm type) const;

 private:
  ContextPtr ctx_;
  std::vector<PointSet> opens_;
  std::vector<TypeTerm> sigma_;
  std::unordered_map<PointSet, OpenId, PointSetHash> index_;
  std::vector<GeneratorSpec> generators_;
};

struct TopologyOptions {
  std::size_t max_points = kMaxPoints;
  std::size_t max_opens = kDefaultMaxOpens;
};

// Topology generated by the generator sets (unions of nonempty
// intersections, plus the whole point set), typed by the least extension
//   sigma(U) = JOIN { MEET { type(g) : g in M } : M with {} != /\M subset of U }.
// If the generators do not cover X, X is added with the join of all
// generator types. Throws ValidationError when the result is not a valid
// typed space.
TypedSpace generate_topology(const ContextPtr& ctx, std::vector<GeneratorSpec> specs,
                             const TopologyOptions& options = {});

struct Finding {
  std::string condition;
  std::vector<OpenId> opens;
  std::string detail;
};

struct ValidationReport {
  std::vector<Finding> failures;
  bool ok() const { return failures.empty(); }
  std::string summary(const TypedSpace& s) const;
};

// Conditions reported: "topology" (empty set, X, closure under union and
// intersection), "empty-iff-bottom", "never-top", "monotone",
// "meet-bound" (sigma(U&V) <= sigma(U) & sigma(V)) and "join-bound".
ValidationReport validate_type_mapping(const TypedSpace& s);

struct StrictnessResult {
  bool strict = true;
  std::optional<std::pair<OpenId, OpenId>> counterexample;  // (U, V) with U a proper subset of V
};

StrictnessResult is_strictly_typed(const TypedSpace& s);

// sigma'(U) = sigma(U) | MEET{ ~x's : x not in U } for nonempty U != X; a strict
// space is returned unchanged.
// Throws ValidationError if the result is invalid or still not strict.
TypedSpace strictify(const TypedSpace& s);

// Some open U containing x has sigma(U) == p exactly.
bool forces(const TypedSpace& s, const TypeTerm& p, PointIndex x);

struct RealizedTypes {
  std::vector<TypeTerm> types;            // distinct, in order of first open
  std::vector<std::vector<bool>> leq;     // leq[i][j] iff types[i] <= types[j]
  std::vector<std::size_t> type_of_open;  // index into types; npos for the empty set

  std::optional<std::size_t> find(const TypeTerm& t) const;
};

RealizedTypes realized_types(const TypedSpace& s);

std::string format_set(const TypedSpace& s, PointSet set);
// Parses "a,b,c" (whitespace tolerated); throws UnknownPointError.
PointSet parse_point_list(const TypedSpace& s, std::string_view list);

}  // namespace tts
