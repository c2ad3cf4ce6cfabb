#include "junta/oracle.hpp"

#include <cmath>
#include <string>

#include "junta/error.hpp"
#include "junta/fourier.hpp"
#include "junta/regression.hpp"

namespace junta {

namespace {

constexpr int kMaxOptDim = 16;

void check_dims(int a, int b, const char* what) {
  if (a != b) throw Error(std::string(what) + ": dimension mismatch");
}

void check_opt_args(const JointDistribution& dist, int k, const char* what) {
  if (dist.dim() > kMaxOptDim) {
    throw Error(std::string(what) + ": d = " + std::to_string(dist.dim()) +
                " exceeds " + std::to_string(kMaxOptDim));
  }
  if (k < 0 || k > dist.dim()) {
    throw Error(std::string(what) + ": k must lie in [0, d]");
  }
}

}  // namespace

LossReport exact_loss(const JointDistribution& dist, const Predictor& g) {
  check_dims(dist.dim(), g.dim(), "exact_loss");
  LossReport r;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    const double p_plus = dist.prob(x, 1);
    const double p_minus = dist.prob(x, -1);
    if (p_plus == 0.0 && p_minus == 0.0) continue;
    const int gx = g.predict(x);
    const double wrong = gx == 1 ? p_minus : p_plus;
    r.zero_one += wrong;
    r.inner += gx * (p_plus - p_minus);
    r.square += 4.0 * wrong;  // (y - g)^2 is 4 on a mismatch, 0 otherwise
  }
  return r;
}

LossReport empirical_loss(const Dataset& data, const Predictor& g) {
  check_dims(data.dim(), g.dim(), "empirical_loss");
  std::size_t mismatches = 0;
  long long agreement = 0;
  for (const auto& s : data) {
    const int gx = g.predict(s.x);
    if (gx != s.y) ++mismatches;
    agreement += gx * s.y;
  }
  const double n = static_cast<double>(data.size());
  LossReport r;
  r.zero_one = static_cast<double>(mismatches) / n;
  r.inner = static_cast<double>(agreement) / n;
  r.square = 4.0 * static_cast<double>(mismatches) / n;
  return r;
}

OptResult opt_exact(const JointDistribution& dist, int k) {
  check_opt_args(dist, k, "opt_exact");
  OptResult best{1.0, SubsetMask::empty(dist.dim())};
  double best_norm = -1.0;
  for (const auto& subset : enumerate_subsets(dist.dim(), k, SubsetRange::exactly_k)) {
    const CellTable t = conditional_means(dist, subset);
    double l1 = 0.0;  // E_D |E_D[Y | X^J]|
    for (std::size_t z = 0; z < t.mass.size(); ++z) l1 += t.mass[z] * std::abs(t.mean[z]);
    if (l1 > best_norm) {
      best_norm = l1;
      best = {0.5 - 0.5 * l1, subset};
    }
  }
  return best;
}

double opt_fourier(const JointDistribution& dist, int k) {
  check_opt_args(dist, k, "opt_fourier");
  const int d = dist.dim();
  const std::vector<double> a = stochastic_spectrum(dist);
  double best = -1.0;
  for (const auto& subset : enumerate_subsets(d, k, SubsetRange::exactly_k)) {
    // f^J on the 2^k cells, then sum_x |f^J(x)| = 2^(d-k) sum_z |f^J(z)|.
    std::vector<double> cells(std::size_t{1} << k);
    for (Mask local = 0; local < cells.size(); ++local) {
      cells[local] = a[scatter_bits(local, subset.bits())];
    }
    walsh_hadamard(cells);
    double l1 = 0.0;
    for (double v : cells) l1 += std::abs(v);
    best = std::max(best, std::ldexp(l1, d - k));
  }
  return 0.5 - 0.5 * best;
}

double bayes_opt(const JointDistribution& dist) {
  double l1 = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) l1 += std::abs(dist.label_correlation(x));
  return 0.5 - 0.5 * l1;
}

double loss_from_spectrum(const JointDistribution& dist, const Predictor& g) {
  check_dims(dist.dim(), g.dim(), "loss_from_spectrum");
  const std::vector<double> a = stochastic_spectrum(dist);
  const std::vector<int> predictions = g.prediction_table();
  const std::vector<double> g_coeffs =
      uniform_fourier_dense(std::vector<double>(predictions.begin(), predictions.end()));
  double sum = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) sum += a[s] * g_coeffs[s];
  return 0.5 - std::ldexp(sum, dist.dim() - 1);
}

MmseSignBound mmse_sign_bound(const JointDistribution& dist, const SparsePolynomial& h,
                              std::optional<SubsetMask> conditioning) {
  check_dims(dist.dim(), h.dim(), "mmse_sign_bound");
  const SubsetMask subset = conditioning.value_or(SubsetMask::all(dist.dim()));
  check_dims(dist.dim(), subset.dim(), "mmse_sign_bound");
  if ((h.support() & ~subset.bits()) != 0) {
    throw Error("mmse_sign_bound: h depends on coordinates outside the conditioning set");
  }
  const CellTable t = conditional_means(dist, subset);

  MmseSignBound b;
  double l1 = 0.0;
  double dist_sq = 0.0;
  for (Mask local = 0; local < t.mass.size(); ++local) {
    if (t.mass[local] == 0.0) continue;
    l1 += t.mass[local] * std::abs(t.mean[local]);
    const double diff = t.mean[local] - h.evaluate(scatter_bits(local, subset.bits()));
    dist_sq += t.mass[local] * diff * diff;
  }
  b.opt_z = 0.5 - 0.5 * l1;
  b.mmse_distance = std::sqrt(dist_sq);
  b.lhs = exact_loss(dist, Predictor(h)).zero_one;
  b.rhs = b.opt_z + u_poly(b.mmse_distance);
  b.rhs_squared_argument = b.opt_z + u_poly(dist_sq);
  return b;
}

double threshold_error_probability(int y, double p) {
  if (y != 1 && y != -1) throw Error("label must be +-1");
  // The density is symmetric, so a -1 label at p is a +1 label at -p.
  const double v = y == 1 ? p : -p;
  if (v > 1.0) return 0.0;
  if (v >= 0.0) return 0.5 * (1.0 - v) * (1.0 - v);
  if (v >= -1.0) return 0.5 - v - 0.5 * v * v;
  return 1.0;
}

ThresholdExpectation threshold_expectation(const Dataset& data, const SparsePolynomial& p) {
  check_dims(data.dim(), p.dim(), "threshold_expectation");
  ThresholdExpectation r;
  for (const auto& s : data) r.expected_loss += threshold_error_probability(s.y, p.evaluate(s.x));
  r.expected_loss /= static_cast<double>(data.size());
  r.bound = 0.5 * empirical_square_loss(data, p);
  return r;
}

FourierFrameworkBound fourier_framework_bound(const JointDistribution& dist,
                                              const SubsetMask& subset,
                                              const SparsePolynomial& h) {
  check_dims(dist.dim(), subset.dim(), "fourier_framework_bound");
  check_dims(dist.dim(), h.dim(), "fourier_framework_bound");
  if ((h.support() & ~subset.bits()) != 0) {
    throw Error("fourier_framework_bound: h depends on coordinates outside J");
  }
  const int d = dist.dim();
  const SparsePolynomial f = fourier_projection(dist, subset);

  FourierFrameworkBound b;
  double sq = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    const double fx = f.evaluate(x);
    b.l1_norm += std::abs(fx);
    const double diff = fx - h.evaluate(x);
    sq += diff * diff;
  }
  b.l2_distance = std::sqrt(std::ldexp(sq, -d));
  b.lhs = exact_loss(dist, Predictor(h)).zero_one;
  b.rhs = 0.5 - 0.5 * b.l1_norm + u_poly(std::ldexp(b.l2_distance, d));
  return b;
}

}  // namespace junta
