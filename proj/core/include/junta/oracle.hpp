#pragma once

// Exact and empirical evaluation of predictors, the optimal k-junta loss, and
// the closed-form loss bounds that relate 0-1 loss to square loss.

#include <optional>

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"
#include "junta/polynomial.hpp"

namespace junta {

/// The three equivalent views of a predictor's 0-1 loss:
/// zero_one = 1/2 - inner/2 = square/4.
struct LossReport {
  double zero_one = 0.0;
  double square = 0.0;  // ||Y - g||^2_2
  double inner = 0.0;   // <Y, g>
};

LossReport exact_loss(const JointDistribution& dist, const Predictor& g);

/// Loss under the empirical distribution; zero_one is mismatches / n.
LossReport empirical_loss(const Dataset& data, const Predictor& g);

struct OptResult {
  double opt = 0.0;
  SubsetMask subset{0, 1};
};

/// Minimum 0-1 loss over k-juntas, 1/2 - 1/2 max_{|J|=k} E_D|E_D[Y|X^J]|,
/// with the maximizing J (ties to the smallest mask). Requires k <= d <= 16.
OptResult opt_exact(const JointDistribution& dist, int k);

/// The same quantity from the stochastic Fourier coefficients:
/// 1/2 - 1/2 max_J sum_x |f^J(x)|.
double opt_fourier(const JointDistribution& dist, int k);

/// Minimum loss over all Boolean predictors, 1/2 - 1/2 E|E[Y|X]|.
double bayes_opt(const JointDistribution& dist);

/// L_D(g) = 1/2 - 2^(d-1) sum_S a_S g_S.
double loss_from_spectrum(const JointDistribution& dist, const Predictor& g);

/// Left and right side of a loss inequality lhs <= rhs.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  double gap() const noexcept { return lhs - rhs; }
  bool holds(double slack = 1e-12) const noexcept { return lhs <= rhs + slack; }
};

struct MmseSignBound : BoundCheck {
  double opt_z = 0.0;
  double mmse_distance = 0.0;  // ||Y_MMSE - h||_{2,D}
  /// opt_Z + U(||Y_MMSE - h||^2_{2,D}), the squared-argument variant.
  /// Reported only, never asserted.
  double rhs_squared_argument = 0.0;
};

/// P{Y != sign[h(Z)]} <= opt_Z + U(||Y_MMSE - h||_{2,D}) with Z = X^J.
/// `h` must only involve coordinates of J; J defaults to all of [d].
MmseSignBound mmse_sign_bound(const JointDistribution& dist, const SparsePolynomial& h,
                              std::optional<SubsetMask> conditioning = std::nullopt);

/// E_theta[1{y != sign(p - theta)}] for theta with density 1 - |t| on [-1, 1].
double threshold_error_probability(int y, double p);

struct ThresholdExpectation {
  double expected_loss = 0.0;  // E_theta of the empirical 0-1 loss
  double bound = 0.0;          // (1/2) empirical square loss of p

  bool holds(double slack = 1e-12) const noexcept {
    return expected_loss <= bound + slack;
  }
};

ThresholdExpectation threshold_expectation(const Dataset& data, const SparsePolynomial& p);

struct FourierFrameworkBound : BoundCheck {
  double l1_norm = 0.0;       // sum_x |f^J(x)|
  double l2_distance = 0.0;   // ||f^J - h||_{2,unif}
};

/// L_D(sign h) <= 1/2 - 1/2 sum_x |f^J(x)| + U(2^d ||f^J - h||_{2,unif}).
FourierFrameworkBound fourier_framework_bound(const JointDistribution& dist,
                                              const SubsetMask& subset,
                                              const SparsePolynomial& h);

}  // namespace junta
