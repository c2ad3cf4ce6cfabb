#pragma once

// Explicit joint distributions over {-1,+1}^d x {-1,+1}, labeled datasets,
// sampling, and the planted-junta generator.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "junta/boolean_cube.hpp"
#include "junta/rng.hpp"

namespace junta {

/// Label +1 is stored at offset 0 and -1 at offset 1.
constexpr std::size_t label_offset(int y) noexcept { return y < 0 ? 1 : 0; }
constexpr std::size_t table_index(Mask x, int y) noexcept {
  return (static_cast<std::size_t>(x) << 1) | label_offset(y);
}

/// Tolerance on the total mass of a probability table.
inline constexpr double kMassTolerance = 1e-12;

/// A probability table D(x, y) with 2^(d+1) entries, d <= kMaxTableDim.
class JointDistribution {
 public:
  /// Validates: correct length, entries finite and >= 0, mass 1 +- 1e-12.
  JointDistribution(int dim, std::vector<double> table);

  static JointDistribution point_mass(const CubePoint& x, int y);

  int dim() const noexcept { return dim_; }
  std::size_t num_points() const noexcept { return std::size_t{1} << dim_; }
  std::span<const double> table() const noexcept { return table_; }

  double prob(Mask x, int y) const { return table_[table_index(x, y)]; }
  /// D_X(x) = D(x, +1) + D(x, -1).
  double marginal(Mask x) const {
    return table_[table_index(x, 1)] + table_[table_index(x, -1)];
  }
  /// D(x, +1) - D(x, -1); equals D_X(x) * E[Y | X = x].
  double label_correlation(Mask x) const {
    return table_[table_index(x, 1)] - table_[table_index(x, -1)];
  }

  /// Dense tables of the two functions above, indexed by x.
  std::vector<double> marginal_table() const;
  std::vector<double> correlation_table() const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  int dim_;
  std::vector<double> table_;
};

struct LabeledPoint {
  Mask x;
  int y;  // +1 or -1

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// n >= 1 labeled samples sharing one dimension d <= kMaxPointDim.
class Dataset {
 public:
  Dataset(int dim, std::vector<LabeledPoint> samples);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const LabeledPoint& operator[](std::size_t i) const { return samples_[i]; }
  CubePoint point(std::size_t i) const { return {samples_[i].x, dim_}; }
  std::span<const LabeledPoint> samples() const noexcept { return samples_; }

  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  int dim_;
  std::vector<LabeledPoint> samples_;
};

/// Inverse-CDF sampler over a precomputed cumulative table.
class Sampler {
 public:
  explicit Sampler(const JointDistribution& dist);

  int dim() const noexcept { return dim_; }
  LabeledPoint draw(CounterRng& rng) const;
  Dataset draw(std::size_t n, CounterRng& rng) const;

 private:
  int dim_;
  std::vector<double> cumulative_;
};

/// n i.i.d. draws from `dist`; identical seeds give identical datasets.
Dataset sample(const JointDistribution& dist, std::size_t n, RngSeed seed);

/// The distribution that is uniform over the samples (counts / n).
JointDistribution empirical_distribution(const Dataset& data);

/// D(x, y) = marginal(x) * ((1 - eta) if y = f(x^J) else eta).
///
/// `truth_table[z]` is f at the cell whose local bits are z (bit i of z set iff
/// the i-th smallest coordinate of J is -1); it has 2^|J| entries of +-1.
/// `marginal` has 2^d entries and must itself be a probability vector.
JointDistribution planted_junta_distribution(const SubsetMask& junta,
                                             std::span<const int> truth_table,
                                             std::span<const double> marginal,
                                             double eta);

/// Uniform marginal over {-1,+1}^d.
std::vector<double> uniform_marginal(int dim);

/// Product marginal with P(x_j = -1) = p_minus for every j.
std::vector<double> product_marginal(int dim, double p_minus);

}  // namespace junta
