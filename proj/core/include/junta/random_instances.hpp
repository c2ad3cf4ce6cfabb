#pragma once

// Random problem instances for the randomized verification suites.

#include <cstddef>

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"
#include "junta/polynomial.hpp"
#include "junta/rng.hpp"

namespace junta {

/// Random table with exponential weights. About a third of the draws zero
/// out half the entries so that unobserved cells and zero-mass conditionals
/// are exercised.
JointDistribution random_distribution(int dim, CounterRng& rng);

/// Uniformly random subset of [d].
SubsetMask random_subset(int dim, CounterRng& rng);

/// Random subset of exactly k coordinates.
SubsetMask random_subset_of_size(int dim, int k, CounterRng& rng);

/// Polynomial over the monomials chi_S, S subset of `support`, of degree at
/// most `max_degree`, with coefficients uniform in [-scale, scale]. Each
/// monomial is kept with probability `density`.
SparsePolynomial random_polynomial(const SubsetMask& support, int max_degree,
                                   double scale, CounterRng& rng,
                                   double density = 1.0);

/// Random predictor: random polynomial in all variables, theta in [-1, 1].
Predictor random_predictor(int dim, CounterRng& rng);

}  // namespace junta
