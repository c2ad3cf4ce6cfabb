#include "junta/random_instances.hpp"

#include <cmath>

#include "junta/error.hpp"

namespace junta {

JointDistribution random_distribution(int dim, CounterRng& rng) {
  require_dim(dim, kMaxTableDim);
  std::vector<double> table(std::size_t{2} << dim);
  const bool sparse = rng.below(3) == 0;
  double total = 0.0;
  for (double& p : table) {
    p = -std::log1p(-rng.uniform());
    if (sparse && rng.coin(0.5)) p = 0.0;
  }
  for (double p : table) total += p;
  if (total == 0.0) {
    table[0] = 1.0;
    total = 1.0;
  }
  for (double& p : table) p /= total;
  return {dim, std::move(table)};
}

SubsetMask random_subset(int dim, CounterRng& rng) {
  require_dim(dim);
  return {static_cast<Mask>(rng.below(std::uint64_t{1} << dim)), dim};
}

SubsetMask random_subset_of_size(int dim, int k, CounterRng& rng) {
  require_dim(dim);
  if (k < 0 || k > dim) throw Error("subset size must lie in [0, d]");
  // Floyd's algorithm: k distinct coordinates with k draws.
  Mask bits = 0;
  for (int j = dim - k; j < dim; ++j) {
    const auto t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    bits |= (bits >> t) & 1U ? Mask{1} << j : Mask{1} << t;
  }
  return {bits, dim};
}

SparsePolynomial random_polynomial(const SubsetMask& support, int max_degree, double scale,
                                   CounterRng& rng, double density) {
  SparsePolynomial p(support.dim());
  const int k = support.size();
  for (Mask local = 0; local < (Mask{1} << k); ++local) {
    if (std::popcount(local) > max_degree) continue;
    if (density < 1.0 && !rng.coin(density)) continue;
    p.set(scatter_bits(local, support.bits()), rng.uniform(-scale, scale));
  }
  return p;
}

Predictor random_predictor(int dim, CounterRng& rng) {
  SparsePolynomial p =
      random_polynomial(SubsetMask::all(dim), dim, 1.0, rng, 0.5);
  return Predictor(std::move(p), rng.uniform(-1.0, 1.0));
}

}  // namespace junta
