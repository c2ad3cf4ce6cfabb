#include "junta/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "junta/error.hpp"

namespace junta {

namespace {

double checked_mass(std::span<const double> values, const char* what) {
  double total = 0.0;
  for (double p : values) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(std::string(what) + ": entries must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(std::string(what) + ": entries sum to " + std::to_string(total) +
                ", expected 1");
  }
  return total;
}

}  // namespace

JointDistribution::JointDistribution(int dim, std::vector<double> table)
    : dim_(dim), table_(std::move(table)) {
  require_dim(dim, kMaxTableDim);
  if (table_.size() != (std::size_t{2} << dim)) {
    throw Error("distribution table for d = " + std::to_string(dim) + " needs " +
                std::to_string(std::size_t{2} << dim) + " entries, got " +
                std::to_string(table_.size()));
  }
  checked_mass(table_, "distribution");
}

JointDistribution JointDistribution::point_mass(const CubePoint& x, int y) {
  std::vector<double> table(std::size_t{2} << x.dim(), 0.0);
  table[table_index(x.bits(), y)] = 1.0;
  return {x.dim(), std::move(table)};
}

std::vector<double> JointDistribution::marginal_table() const {
  std::vector<double> out(num_points());
  for (Mask x = 0; x < out.size(); ++x) out[x] = marginal(x);
  return out;
}

std::vector<double> JointDistribution::correlation_table() const {
  std::vector<double> out(num_points());
  for (Mask x = 0; x < out.size(); ++x) out[x] = label_correlation(x);
  return out;
}

Dataset::Dataset(int dim, std::vector<LabeledPoint> samples)
    : dim_(dim), samples_(std::move(samples)) {
  require_dim(dim);
  if (samples_.empty()) throw Error("dataset must contain at least one sample");
  const Mask outside = ~full_mask(dim);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if ((s.x & outside) != 0) {
      throw Error("sample " + std::to_string(i) + " has bits beyond dimension " +
                  std::to_string(dim));
    }
    if (s.y != 1 && s.y != -1) {
      throw Error("sample " + std::to_string(i) + " has label other than +-1");
    }
  }
}

Sampler::Sampler(const JointDistribution& dist)
    : dim_(dist.dim()), cumulative_(dist.table().size()) {
  std::partial_sum(dist.table().begin(), dist.table().end(), cumulative_.begin());
}

LabeledPoint Sampler::draw(CounterRng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  // upper_bound skips zero-probability entries: their cumulative value equals
  // the previous one, so u can never land on them.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) {
    // u rounded up to the total; take the last entry with positive mass.
    it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
  }
  const auto index = static_cast<std::size_t>(it - cumulative_.begin());
  return {static_cast<Mask>(index >> 1), (index & 1) ? -1 : 1};
}

Dataset Sampler::draw(std::size_t n, CounterRng& rng) const {
  if (n == 0) throw Error("sample size must be at least 1");
  std::vector<LabeledPoint> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(draw(rng));
  return {dim_, std::move(samples)};
}

Dataset sample(const JointDistribution& dist, std::size_t n, RngSeed seed) {
  CounterRng rng(seed);
  return Sampler(dist).draw(n, rng);
}

JointDistribution empirical_distribution(const Dataset& data) {
  require_dim(data.dim(), kMaxTableDim);
  std::vector<std::size_t> counts(std::size_t{2} << data.dim(), 0);
  for (const auto& s : data) ++counts[table_index(s.x, s.y)];
  const double n = static_cast<double>(data.size());
  std::vector<double> table(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    table[i] = static_cast<double>(counts[i]) / n;
  }
  return {data.dim(), std::move(table)};
}

JointDistribution planted_junta_distribution(const SubsetMask& junta,
                                             std::span<const int> truth_table,
                                             std::span<const double> marginal,
                                             double eta) {
  const int d = junta.dim();
  require_dim(d, kMaxTableDim);
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw Error("flip probability eta must lie in [0, 1/2)");
  }
  if (truth_table.size() != (std::size_t{1} << junta.size())) {
    throw Error("truth table needs 2^|J| = " +
                std::to_string(std::size_t{1} << junta.size()) + " entries");
  }
  for (int v : truth_table) {
    if (v != 1 && v != -1) throw Error("truth table values must be +-1");
  }
  if (marginal.size() != (std::size_t{1} << d)) {
    throw Error("marginal needs 2^d entries");
  }
  checked_mass(marginal, "marginal");

  std::vector<double> table(std::size_t{2} << d, 0.0);
  for (Mask x = 0; x < marginal.size(); ++x) {
    const int f = truth_table[gather_bits(x, junta.bits())];
    table[table_index(x, f)] = marginal[x] * (1.0 - eta);
    table[table_index(x, -f)] = marginal[x] * eta;
  }
  return {d, std::move(table)};
}

std::vector<double> uniform_marginal(int dim) {
  require_dim(dim, kMaxTableDim);
  const std::size_t size = std::size_t{1} << dim;
  return std::vector<double>(size, 1.0 / static_cast<double>(size));
}

std::vector<double> product_marginal(int dim, double p_minus) {
  require_dim(dim, kMaxTableDim);
  if (!(p_minus >= 0.0 && p_minus <= 1.0)) {
    throw Error("coordinate probability must lie in [0, 1]");
  }
  std::vector<double> out(std::size_t{1} << dim);
  for (Mask x = 0; x < out.size(); ++x) {
    const int minus = std::popcount(x);
    out[x] = std::pow(p_minus, minus) * std::pow(1.0 - p_minus, dim - minus);
  }
  return out;
}

}  // namespace junta
