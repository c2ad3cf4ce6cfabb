#include <gtest/gtest.h>

#include <cmath>

#include "junta/error.hpp"
#include "junta/fourier.hpp"
#include "junta/random_instances.hpp"
#include "junta/regression.hpp"
#include "oracles.hpp"

namespace junta {
namespace {

double norm2(const JointDistribution& dist, const SparsePolynomial& p) {
  // ||Y - p(X)||^2_{2,D}
  double sum = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    const double v = p.evaluate(x);
    sum += dist.prob(x, 1) * (1 - v) * (1 - v) + dist.prob(x, -1) * (1 + v) * (1 + v);
  }
  return sum;
}

std::vector<Mask> subsets_of(Mask j) {
  std::vector<Mask> out;
  for (Mask s = j;; s = (s - 1) & j) {
    out.insert(out.begin(), s);
    if (s == 0) break;
  }
  return out;
}

TEST(SparsePolynomial, EvaluatesAsSumOfCharacters) {
  SparsePolynomial p(4);
  p.set(0, 0.5);
  p.set(0b0011, -1.25);
  p.set(0b1000, 2.0);
  for (Mask x = 0; x < 16; ++x) {
    const double expected =
        0.5 - 1.25 * oracle::chi(0b0011, x, 4) + 2.0 * oracle::chi(0b1000, x, 4);
    EXPECT_DOUBLE_EQ(p.evaluate(x), expected);
    EXPECT_DOUBLE_EQ(p(CubePoint(x, 4)), expected);
  }
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.support(), 0b1011U);
  EXPECT_THROW(p.set(0b10000, 1.0), Error);
  EXPECT_THROW(p.set(1, INFINITY), Error);
}

TEST(Predictor, SignOfZeroIsPlus) {
  EXPECT_EQ(sign_of(0.0), 1);
  EXPECT_EQ(sign_of(-0.0), 1);
  EXPECT_EQ(sign_of(-1e-300), -1);
  const Predictor zero(SparsePolynomial(3));
  for (int v : zero.prediction_table()) EXPECT_EQ(v, 1);
  SparsePolynomial c(3);
  c.set(0, 0.25);
  EXPECT_EQ(Predictor(c, 0.25).predict(5), 1);
  EXPECT_EQ(Predictor(c, 0.2500001).predict(5), -1);
}

TEST(LeastSquaresFit, RecoversCharacterExactly) {
  const int d = 6;
  const SubsetMask j = SubsetMask::from_coordinates(d, {2, 3, 6});
  std::vector<LabeledPoint> samples;
  for (Mask x = 0; x < 64; ++x) samples.push_back({x, oracle::chi(j.bits(), x, d)});
  const Dataset data(d, samples);
  const SparsePolynomial p = least_squares_fit(data, j);
  for (const auto& [s, c] : p.terms()) EXPECT_NEAR(c, s == j.bits() ? 1.0 : 0.0, 1e-12);
  EXPECT_NEAR(empirical_square_loss(data, p), 0.0, 1e-24);
}

TEST(LeastSquaresFit, EmptySubsetGivesLabelMean) {
  const Dataset data(3, {{0, 1}, {1, 1}, {2, -1}, {7, 1}});
  const SparsePolynomial p = least_squares_fit(data, SubsetMask::empty(3));
  ASSERT_EQ(p.terms().size(), 1U);
  EXPECT_NEAR(p.coeff(0), 0.5, 1e-15);
}

TEST(LeastSquaresFit, MatchesDenseOracle) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng({20, t});
    const int d = 6;
    const Dataset data = Sampler(random_distribution(d, rng)).draw(5 + rng.below(200), rng);
    const SubsetMask j = random_subset_of_size(d, static_cast<int>(rng.below(4)), rng);
    const auto basis = subsets_of(j.bits());
    const auto dense = oracle::least_squares(data, basis);
    const SparsePolynomial p = least_squares_fit(data, j);
    EXPECT_NEAR(empirical_square_loss(data, p), dense.square_loss, 1e-8);
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_NEAR(p.evaluate(data[i].x), dense.fitted[i], 1e-8);
    }
    // Minimum-norm solutions agree too, including rank-deficient designs.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      EXPECT_NEAR(p.coeff(basis[b]), dense.coeffs[b], 1e-8);
    }
  }
}

TEST(LeastSquaresFit, GeneralBasisMatchesDenseOracle) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({21, t});
    const int d = 7;
    const Dataset data = Sampler(random_distribution(d, rng)).draw(3 + rng.below(100), rng);
    const auto basis = enumerate_subsets(d, 2, SubsetRange::up_to_k);
    std::vector<Mask> masks;
    for (const auto& s : basis) masks.push_back(s.bits());
    const auto dense = oracle::least_squares(data, masks);
    const SparsePolynomial p = least_squares_fit(data, basis);
    EXPECT_NEAR(empirical_square_loss(data, p), dense.square_loss, 1e-8);
    for (std::size_t b = 0; b < masks.size(); ++b) {
      EXPECT_NEAR(p.coeff(masks[b]), dense.coeffs[b], 1e-7);
    }
  }
}

TEST(LeastSquaresFit, RejectsOversizedSubset) {
  const Dataset data(10, {{0, 1}});
  EXPECT_THROW(least_squares_fit(data, SubsetMask::all(10)), Error);
  EXPECT_THROW(least_squares_fit(data, SubsetMask::all(9)), Error);
}

TEST(LeastSquaresFit, EqualsMmseProjectionOfEmpiricalDistribution) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    CounterRng rng({22, t});
    const int d = 1 + static_cast<int>(rng.below(6));
    const Dataset data = Sampler(random_distribution(d, rng)).draw(1 + rng.below(150), rng);
    const SubsetMask j = random_subset(d, rng);
    const SparsePolynomial fit = least_squares_fit(data, j);
    const SparsePolynomial proj = mmse_projection_exact(empirical_distribution(data), j);
    for (const auto& s : data) EXPECT_NEAR(fit.evaluate(s.x), proj.evaluate(s.x), 1e-10);
  }
}

TEST(MmseProjection, NoisyPlantedJunta) {
  const int d = 5;
  const SubsetMask j = SubsetMask::from_coordinates(d, {1, 5});
  const std::vector<int> f{1, -1, 1, 1};
  const double eta = 0.2;
  const JointDistribution dist = planted_junta_distribution(j, f, product_marginal(d, 0.4), eta);
  const SparsePolynomial p = mmse_projection_exact(dist, j);
  for (Mask x = 0; x < 32; ++x) {
    EXPECT_NEAR(p.evaluate(x), (1 - 2 * eta) * f[gather_bits(x, j.bits())], 1e-14);
  }
}

TEST(MmseProjection, IndependentLabelGivesConstantMean) {
  const int d = 4;
  const double p_plus = 0.7;
  std::vector<double> table(32);
  const auto marginal = product_marginal(d, 0.35);
  for (Mask x = 0; x < 16; ++x) {
    table[table_index(x, 1)] = marginal[x] * p_plus;
    table[table_index(x, -1)] = marginal[x] * (1 - p_plus);
  }
  const JointDistribution dist(d, table);
  for (Mask j = 0; j < 16; ++j) {
    const SparsePolynomial p = mmse_projection_exact(dist, SubsetMask(j, d));
    for (Mask x = 0; x < 16; ++x) EXPECT_NEAR(p.evaluate(x), 2 * p_plus - 1, 1e-14);
  }
}

TEST(MmseProjection, ZeroMassCellsAreZero) {
  std::vector<double> table(16, 0.0);
  table[table_index(0b000, 1)] = 0.5;
  table[table_index(0b001, -1)] = 0.5;
  const JointDistribution dist(3, table);
  const CellTable t = conditional_means(dist, SubsetMask::from_coordinates(3, {1, 2}));
  EXPECT_EQ(t.mean[0], 1.0);
  EXPECT_EQ(t.mean[1], -1.0);
  EXPECT_EQ(t.mean[2], 0.0);
  EXPECT_EQ(t.mean[3], 0.0);
}

TEST(MmseProjection, BeatsRandomProbes) {
  CounterRng rng({23, 0});
  const int d = 5;
  const JointDistribution dist = random_distribution(d, rng);
  const SubsetMask j = SubsetMask::from_coordinates(d, {2, 3, 5});
  const double best = norm2(dist, mmse_projection_exact(dist, j));
  for (int i = 0; i < 1000; ++i) {
    const SparsePolynomial probe = random_polynomial(j, 3, 1.5, rng);
    EXPECT_LE(std::sqrt(best), std::sqrt(norm2(dist, probe)) + 1e-12);
  }
}

TEST(MmseProjection, ResidualIsOrthogonalToSubsetCharacters) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({24, t});
    const int d = 1 + static_cast<int>(rng.below(6));
    const JointDistribution dist = random_distribution(d, rng);
    const SubsetMask j = random_subset(d, rng);
    const SparsePolynomial proj = mmse_projection_exact(dist, j);
    for (Mask s : subsets_of(j.bits())) {
      double inner = 0.0;  // <Y - proj, chi_S>_D
      for (Mask x = 0; x < dist.num_points(); ++x) {
        const double v = proj.evaluate(x);
        inner += (dist.prob(x, 1) * (1 - v) + dist.prob(x, -1) * (-1 - v)) *
                 oracle::chi(s, x, d);
      }
      EXPECT_NEAR(inner, 0.0, 1e-10);
    }
  }
}

TEST(UPoly, Values) {
  EXPECT_EQ(u_poly(0.0), 0.0);
  EXPECT_EQ(u_poly(1.0), 4.0);
  EXPECT_EQ(u_poly(0.5), 1.25);
  EXPECT_THROW(u_poly(-0.1), Error);
}

TEST(UPoly, IncreasingConvexAndBelowFourX) {
  double previous = u_poly(0.0);
  for (int i = 1; i <= 4000; ++i) {
    const double x = i / 1000.0;
    const double h = 1e-3;
    EXPECT_GT(u_poly(x), previous);
    EXPECT_GE(u_poly(x + h) - 2 * u_poly(x) + u_poly(x - h), 0.0);
    if (x <= 1.0) {
      EXPECT_LE(u_poly(x), 4 * x + 1e-15);
    }
    previous = u_poly(x);
  }
}

TEST(FourierProjection, UniformMarginalIsScaledMmse) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({25, t});
    const int d = 1 + static_cast<int>(rng.below(6));
    std::vector<double> table(std::size_t{2} << d);
    const double px = 1.0 / static_cast<double>(std::size_t{1} << d);
    for (Mask x = 0; x < (Mask{1} << d); ++x) {
      const double q = rng.uniform();
      table[table_index(x, 1)] = px * q;
      table[table_index(x, -1)] = px * (1 - q);
    }
    const JointDistribution dist(d, table);
    const SubsetMask j = random_subset(d, rng);
    const SparsePolynomial f = fourier_projection(dist, j);
    const SparsePolynomial pi = mmse_projection_exact(dist, j);
    for (Mask x = 0; x < dist.num_points(); ++x) {
      EXPECT_NEAR(std::ldexp(f.evaluate(x), d), pi.evaluate(x), 1e-12);
    }
  }
}

TEST(FourierProjection, CharacterLabel) {
  const int d = 5;
  const Mask s0 = 0b00110;
  std::vector<double> table(64, 0.0);
  for (Mask x = 0; x < 32; ++x) table[table_index(x, oracle::chi(s0, x, d))] = 1.0 / 32;
  const JointDistribution dist(d, table);
  const SparsePolynomial f = fourier_projection(dist, SubsetMask(0b10110, d));
  for (const auto& [s, c] : f.terms()) EXPECT_NEAR(c, s == s0 ? 1.0 / 32 : 0.0, 1e-17);
}

TEST(FourierProjection, SignAgreesWithMmseOnPositiveMassCells) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng({26, t});
    const int d = 1 + static_cast<int>(rng.below(6));
    const JointDistribution dist = random_distribution(d, rng);
    const SubsetMask j = random_subset(d, rng);
    const SparsePolynomial f = fourier_projection(dist, j);
    const CellTable cells = conditional_means(dist, j);
    for (Mask x = 0; x < dist.num_points(); ++x) {
      const Mask z = gather_bits(x, j.bits());
      if (cells.mass[z] == 0.0 || std::abs(cells.mean[z]) < 1e-9) continue;
      EXPECT_EQ(sign_of(f.evaluate(x)), sign_of(cells.mean[z]));
      // f^J(x) = 2^(k-d) E[Y 1{X^J = x^J}]
      EXPECT_NEAR(f.evaluate(x), std::ldexp(cells.mass[z] * cells.mean[z], j.size() - d),
                  1e-15);
    }
  }
}

TEST(FourierProjection, EmpiricalModeUsesEmpiricalCoefficients) {
  CounterRng rng({27, 0});
  const int d = 6;
  const Dataset data = Sampler(random_distribution(d, rng)).draw(300, rng);
  const SubsetMask j = SubsetMask::from_coordinates(d, {1, 2, 6});
  const SparsePolynomial f = fourier_projection(data, j);
  for (Mask s : subsets_of(j.bits())) {
    EXPECT_NEAR(f.coeff(s), empirical_coeff(data, SubsetMask(s, d)), 1e-17);
  }
}

}  // namespace
}  // namespace junta
