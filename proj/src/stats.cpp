#include "tts/stats.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "tts/chains.hpp"
#include "tts/errors.hpp"

namespace tts {

ScoreTable::ScoreTable(std::vector<std::pair<std::string, double>> population) : population_(std::move(population)) {
  const std::size_t n = population_.size();
  if (n < 2) throw NoVarianceError("population has " + std::to_string(n) + " member(s); at least two are needed");
  // Welford update.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (const auto& [subject, value] : population_) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }
  mean_ = mean;
  sample_std_ = std::sqrt(m2 / static_cast<double>(n - 1));
  bool all_equal = true;
  for (const auto& entry : population_) all_equal = all_equal && entry.second == population_.front().second;
  if (all_equal || sample_std_ == 0.0) throw NoVarianceError("all population values are equal");
  for (const auto& entry : population_) z_.push_back((entry.second - mean_) / sample_std_);
}

double ScoreTable::z_of(const std::string& subject) const {
  for (std::size_t i = 0; i < population_.size(); ++i) {
    if (population_[i].first == subject) return z_[i];
  }
  throw UnknownIdentifierError(subject);
}

std::string ScoreTable::to_csv() const {
  std::string out = "subject,value,z\n";
  char buf[64];
  for (std::size_t i = 0; i < population_.size(); ++i) {
    std::string subject = population_[i].first;
    if (subject.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : subject) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      subject = quoted + "\"";
    }
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", population_[i].second, z_[i]);
    out += subject + buf;
  }
  return out;
}

std::size_t require_generator(const TypedSpace& s, const std::string& name) {
  auto idx = s.poset().index_of(name);
  if (!idx) throw UnknownIdentifierError(name);
  return *idx;
}

ScoreTable pchain_stats(const TypedSpace& s, std::size_t generator) {
  const GeneratorMask mask = GeneratorMask{1} << generator;
  std::vector<bool> member(s.open_count(), false);
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    for (OpenId u : t_pchain_at(s, x, mask).members) member[u] = true;
  }
  std::vector<std::pair<std::string, double>> population;
  for (OpenId u = 0; u < s.open_count(); ++u) {
    if (member[u]) population.emplace_back(format_set(s, s.open(u)), static_cast<double>(s.open(u).size()));
  }
  return ScoreTable(std::move(population));
}

std::vector<std::size_t> activity_counts(const TypedSpace& s, std::size_t generator) {
  if (generator >= s.poset().size()) throw PreconditionError("unknown generator index");
  const GeneratorMask mask = GeneratorMask{1} << generator;
  std::vector<std::size_t> out;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    std::unordered_set<TypeTerm, TypeTermHash> types;
    for (OpenId u = 1; u < s.open_count(); ++u) {
      if (s.open(u).contains(x) && in_generator_sublattice(s.sigma(u), mask)) types.insert(s.sigma(u));
    }
    out.push_back(types.size());
  }
  return out;
}

ScoreTable point_activity(const TypedSpace& s, std::size_t generator) {
  const auto counts = activity_counts(s, generator);
  std::vector<std::pair<std::string, double>> population;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    population.emplace_back(s.point_name(x), static_cast<double>(counts[x]));
  }
  return ScoreTable(std::move(population));
}

std::size_t pair_count(const TypedSpace& s, PointIndex x, PointIndex y, bool two_witness) {
  if (x >= s.point_count()) throw UnknownPointError(std::to_string(x));
  if (y >= s.point_count()) throw UnknownPointError(std::to_string(y));
  if (x == y) throw PreconditionError("pair affinity needs two distinct points");
  std::unordered_set<TypeTerm, TypeTermHash> types;
  if (!two_witness) {
    for (OpenId u = 1; u < s.open_count(); ++u) {
      if (s.open(u).contains(x) && s.open(u).contains(y)) types.insert(s.sigma(u));
    }
    return types.size();
  }
  std::unordered_set<TypeTerm, TypeTermHash> at_x;
  for (OpenId u = 1; u < s.open_count(); ++u) {
    if (s.open(u).contains(x)) at_x.insert(s.sigma(u));
  }
  for (OpenId u = 1; u < s.open_count(); ++u) {
    if (s.open(u).contains(y) && at_x.count(s.sigma(u))) types.insert(s.sigma(u));
  }
  return types.size();
}

ScoreTable pair_affinity(const TypedSpace& s, bool two_witness) {
  std::vector<std::pair<std::string, double>> population;
  for (PointIndex x = 0; x < s.point_count(); ++x) {
    for (PointIndex y = x + 1; y < s.point_count(); ++y) {
      population.emplace_back("{" + s.point_name(x) + "," + s.point_name(y) + "}",
                              static_cast<double>(pair_count(s, x, y, two_witness)));
    }
  }
  return ScoreTable(std::move(population));
}

}  // namespace tts
