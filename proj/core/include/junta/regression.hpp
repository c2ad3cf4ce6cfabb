#pragma once

// Least-squares polynomial regression, exact MMSE projections onto subsets of
// coordinates, and the U polynomial that bounds excess 0-1 loss.

#include <span>
#include <vector>

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"
#include "junta/polynomial.hpp"

namespace junta {

/// Largest |J| for per-subset fits (2^8 = 256 basis functions).
inline constexpr int kMaxFitOrder = 8;
/// Largest monomial basis accepted by the general fit.
inline constexpr std::size_t kMaxBasisSize = 2048;
/// Relative eigenvalue cutoff of the pseudoinverse.
inline constexpr double kPseudoInverseCutoff = 1e-10;

/// Minimizes (1/n) sum_i (y_i - p(x_i))^2 over p in span{chi_S : S subset of J}.
/// Singular Gram matrices get the minimum-norm solution.
SparsePolynomial least_squares_fit(const Dataset& data, const SubsetMask& subset);

/// Same, over an arbitrary list of monomials.
SparsePolynomial least_squares_fit(const Dataset& data,
                                   std::span<const SubsetMask> basis);

/// (1/n) sum_i (y_i - p(x_i))^2.
double empirical_square_loss(const Dataset& data, const SparsePolynomial& p);

/// Mass and conditional label mean of each cell x^J = z (local bit order).
struct CellTable {
  SubsetMask subset;
  std::vector<double> mass;  // P(X^J = z)
  std::vector<double> mean;  // E[Y | X^J = z], 0 where mass is 0
};
CellTable conditional_means(const JointDistribution& dist, const SubsetMask& subset);

/// argmin_{p on J} ||Y - p(X^J)||_{2,D}: the conditional expectation
/// E[Y | X^J] written in the chi_S (S subset of J) basis.
SparsePolynomial mmse_projection_exact(const JointDistribution& dist,
                                       const SubsetMask& subset);

/// U(x) = x^3 + 1.5 x^2 + 1.5 x for x >= 0.
double u_poly(double x);

/// f^J(x) = sum_{S subset of J} a_S chi_S(x) with exact coefficients.
SparsePolynomial fourier_projection(const JointDistribution& dist,
                                    const SubsetMask& subset);
/// Same with the empirical coefficients â_S.
SparsePolynomial fourier_projection(const Dataset& data, const SubsetMask& subset);

}  // namespace junta
