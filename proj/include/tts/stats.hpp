#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tts/space.hpp"

namespace tts {

// Population of raw values with sample mean, sample standard deviation
// (n - 1 denominator) and z-scores in population order.
class ScoreTable {
 public:
  // Throws NoVarianceError when fewer than two subjects or zero spread.
  explicit ScoreTable(std::vector<std::pair<std::string, double>> population);

  const std::vector<std::pair<std::string, double>>& population() const { return population_; }
  double mean() const { return mean_; }
  double sample_std() const { return sample_std_; }
  const std::vector<double>& z() const { return z_; }
  double z_of(const std::string& subject) const;

  // "subject,value,z" with a header row.
  std::string to_csv() const;

 private:
  std::vector<std::pair<std::string, double>> population_;
  double mean_ = 0.0;
  double sample_std_ = 0.0;
  std::vector<double> z_;
};

// Sizes of the distinct opens in T_{p-chain}(X); subjects are the opens.
ScoreTable pchain_stats(const TypedSpace& s, std::size_t generator);

// |L_x|: distinct types in L({p}, X) realized by opens containing x.
std::vector<std::size_t> activity_counts(const TypedSpace& s, std::size_t generator);
ScoreTable point_activity(const TypedSpace& s, std::size_t generator);

// |L_{x,y}| over one pair. Single witness: types of opens holding both
// points. Two witnesses: types realized by some open holding x and some
// open holding y.
std::size_t pair_count(const TypedSpace& s, PointIndex x, PointIndex y, bool two_witness = false);
ScoreTable pair_affinity(const TypedSpace& s, bool two_witness = false);

// Generator index by name; throws UnknownIdentifierError.
std::size_t require_generator(const TypedSpace& s, const std::string& name);

}  // namespace tts
