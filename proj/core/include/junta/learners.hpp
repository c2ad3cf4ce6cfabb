#pragma once

// The learning procedures. Each returns the predictor and a report whose
// empirical loss is that of the returned predictor on the training set.
//
// Every tie (subset, truth table, threshold) goes to the smallest canonical
// index, so results are reproducible bit for bit.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"
#include "junta/polynomial.hpp"

namespace junta {

enum class Algorithm { l2, fourier, erm, threshold, mmse_sign };

std::string_view to_string(Algorithm a) noexcept;
/// Accepts "l2", "fourier", "erm", "threshold", "mmse-sign".
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct SubsetScore {
  SubsetMask subset;
  double zero_one = 0.0;
  double square = 0.0;
};

struct LearnReport {
  std::string algorithm;
  SubsetMask subset{0, 1};
  double empirical_loss = 0.0;
  double empirical_square_loss = 0.0;
  std::vector<SubsetScore> per_subset;
  double seconds = 0.0;
  std::vector<std::string> warnings;
};

struct LearnResult {
  Predictor predictor;
  LearnReport report;
};

/// How l2_algorithm picks among the per-subset fits.
enum class SubsetSelection {
  /// Minimum empirical 0-1 loss of sign[p_J]; ties to smaller square loss,
  /// then smaller mask.
  zero_one_loss,
  /// Minimum empirical square loss of p_J; ties to the smaller mask.
  square_loss,
};

/// Per-subset least squares over |J| = k, sign of the selected fit.
LearnResult l2_algorithm(const Dataset& data, int k,
                         SubsetSelection selection = SubsetSelection::zero_one_loss);

/// Empirical Fourier coefficients for |S| <= k, then the |J| = k projection
/// whose sign has the smallest empirical 0-1 loss.
LearnResult stochastic_fourier(const Dataset& data, int k);

/// Degree-<=k regression on all d variables, then the threshold theta in
/// [-1, 1] minimizing the empirical 0-1 loss of sign[p - theta].
LearnResult l2_threshold(const Dataset& data, int k);

/// Exhaustive empirical risk minimization over k-juntas; k <= 4, d <= 16.
LearnResult erm_bruteforce(const Dataset& data, int k);
inline constexpr int kMaxErmOrder = 4;
inline constexpr int kMaxErmDim = 16;

/// sign of the empirical conditional mean of y given x (0 when unseen).
LearnResult sign_mmse(const Dataset& data);

/// Dispatch by name; `k` is ignored by mmse_sign.
LearnResult learn(Algorithm algorithm, const Dataset& data, int k);

}  // namespace junta
