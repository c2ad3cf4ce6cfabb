#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "junta/error.hpp"
#include "junta/learners.hpp"
#include "junta/oracle.hpp"
#include "junta/random_instances.hpp"
#include "junta/regression.hpp"
#include "oracles.hpp"

namespace junta {
namespace {

std::vector<int> parity_table(int k) {
  std::vector<int> t(std::size_t{1} << k);
  for (Mask z = 0; z < t.size(); ++z) t[z] = parity_sign(z);
  return t;
}

Dataset random_dataset(CounterRng& rng, int max_dim, std::size_t max_n) {
  const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim)));
  return Sampler(random_distribution(d, rng)).draw(1 + rng.below(max_n), rng);
}

constexpr Algorithm kAll[] = {Algorithm::l2, Algorithm::fourier, Algorithm::erm,
                              Algorithm::threshold, Algorithm::mmse_sign};

TEST(Algorithm, NamesRoundTrip) {
  for (Algorithm a : kAll) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_EQ(to_string(Algorithm::mmse_sign), "mmse-sign");
  EXPECT_FALSE(parse_algorithm("L2").has_value());
  EXPECT_FALSE(parse_algorithm("").has_value());
}

TEST(Learners, RecoverNoiselessParityExactly) {
  const int d = 6;
  const SubsetMask j = SubsetMask::from_coordinates(d, {2, 5});
  std::vector<LabeledPoint> samples;
  for (Mask x = 0; x < 64; ++x) samples.push_back({x, oracle::chi(j.bits(), x, d)});
  const Dataset data(d, samples);
  for (Algorithm a : {Algorithm::l2, Algorithm::fourier, Algorithm::erm}) {
    const LearnResult r = learn(a, data, 2);
    EXPECT_EQ(r.report.subset, j) << to_string(a);
    EXPECT_EQ(r.report.empirical_loss, 0.0) << to_string(a);
  }
  EXPECT_EQ(l2_threshold(data, 2).report.empirical_loss, 0.0);
  EXPECT_EQ(sign_mmse(data).report.empirical_loss, 0.0);
}

TEST(Learners, ConstantLabelWithKZero) {
  const Dataset data(3, {{0, -1}, {5, -1}, {7, -1}});
  for (Algorithm a : kAll) {
    const LearnResult r = learn(a, data, 0);
    EXPECT_EQ(r.report.empirical_loss, 0.0) << to_string(a);
    // x = 2 is unseen; only the cell-wise rule falls back to +1 there.
    EXPECT_EQ(r.predictor.predict(2), a == Algorithm::mmse_sign ? 1 : -1) << to_string(a);
  }
}

TEST(Learners, ReportedLossIsThatOfTheReturnedPredictor) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng({50, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(data.dim(), 3)) + 1));
    for (Algorithm a : kAll) {
      const LearnResult r = learn(a, data, k);
      std::size_t mistakes = 0;
      for (const auto& s : data) mistakes += r.predictor.predict(s.x) != s.y;
      EXPECT_EQ(r.report.empirical_loss,
                static_cast<double>(mistakes) / static_cast<double>(data.size()))
          << to_string(a);
      EXPECT_EQ(r.report.algorithm, to_string(a));
      if (a != Algorithm::threshold && a != Algorithm::mmse_sign) {
        EXPECT_EQ(r.report.subset.size(), k);
        EXPECT_TRUE(r.predictor.poly().support() == (r.predictor.poly().support() &
                                                      r.report.subset.bits()));
      }
    }
  }
}

TEST(Learners, RejectOutOfRangeK) {
  const Dataset data(3, {{0, 1}});
  for (Algorithm a : {Algorithm::l2, Algorithm::fourier, Algorithm::erm, Algorithm::threshold}) {
    EXPECT_THROW(learn(a, data, 4), Error) << to_string(a);
    EXPECT_THROW(learn(a, data, -1), Error) << to_string(a);
  }
  const Dataset wide(17, {{0, 1}});
  EXPECT_THROW(erm_bruteforce(wide, 1), Error);
  const Dataset ok(6, {{0, 1}});
  EXPECT_THROW(erm_bruteforce(ok, 5), Error);
}

TEST(L2Algorithm, MatchesBruteForceErm) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng({51, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(data.dim(), 2)) + 1));
    const LearnResult l2 = l2_algorithm(data, k);
    const LearnResult erm = erm_bruteforce(data, k);
    EXPECT_NEAR(l2.report.empirical_loss, erm.report.empirical_loss, 1e-12);
    EXPECT_EQ(static_cast<double>(oracle::junta_erm_mistakes(data, k)) /
                  static_cast<double>(data.size()),
              erm.report.empirical_loss);
  }
}

TEST(L2Algorithm, ZeroOneLossAtMostSquareLoss) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng({52, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(data.dim()) + 1));
    for (auto sel : {SubsetSelection::zero_one_loss, SubsetSelection::square_loss}) {
      const LearnResult r = l2_algorithm(data, k, sel);
      EXPECT_LE(r.report.empirical_loss, r.report.empirical_square_loss + 1e-12);
    }
  }
}

TEST(L2Algorithm, SelectionRulesPickTheirMinimum) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({53, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = std::min(data.dim(), 2);
    const LearnResult zo = l2_algorithm(data, k, SubsetSelection::zero_one_loss);
    const LearnResult sq = l2_algorithm(data, k, SubsetSelection::square_loss);
    ASSERT_EQ(zo.report.per_subset.size(), binomial(data.dim(), k));
    double min_zo = 2.0;
    double min_sq = 5.0;
    for (const auto& s : zo.report.per_subset) {
      min_zo = std::min(min_zo, s.zero_one);
      min_sq = std::min(min_sq, s.square);
    }
    EXPECT_EQ(zo.report.empirical_loss, min_zo);
    EXPECT_NEAR(sq.report.empirical_square_loss, min_sq, 1e-12);
    const auto first_min = std::find_if(
        sq.report.per_subset.begin(), sq.report.per_subset.end(),
        [&](const SubsetScore& s) { return s.square == min_sq; });
    EXPECT_EQ(sq.report.subset, first_min->subset);
  }
}

TEST(L2Algorithm, EmpiricalLossNonIncreasingInK) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({54, t});
    const Dataset data = random_dataset(rng, 6, 200);
    double previous = 1.0;
    for (int k = 0; k <= data.dim(); ++k) {
      const double v = l2_algorithm(data, k).report.empirical_loss;
      EXPECT_LE(v, previous);
      previous = v;
    }
  }
}

TEST(StochasticFourier, AgreesWithL2UnderUniformSamples) {
  // With every point observed equally often the projections coincide up to
  // the 2^(d-k) scale, so the empirical losses agree.
  const int d = 5;
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng({55, t});
    std::vector<LabeledPoint> samples;
    for (Mask x = 0; x < 32; ++x) {
      samples.push_back({x, rng.coin(0.5) ? 1 : -1});
      samples.push_back({x, rng.coin(0.5) ? 1 : -1});
    }
    const Dataset data(d, samples);
    const int k = 1 + static_cast<int>(rng.below(3));
    EXPECT_EQ(stochastic_fourier(data, k).report.empirical_loss,
              l2_algorithm(data, k).report.empirical_loss);
  }
}

TEST(StochasticFourier, ProjectionUsesEmpiricalCoefficients) {
  CounterRng rng({56, 0});
  const Dataset data = Sampler(random_distribution(6, rng)).draw(300, rng);
  const LearnResult r = stochastic_fourier(data, 2);
  const SparsePolynomial expected = fourier_projection(data, r.report.subset);
  for (Mask x = 0; x < 64; ++x) {
    EXPECT_NEAR(r.predictor.poly().evaluate(x), expected.evaluate(x), 1e-15);
  }
}

TEST(StochasticFourier, WideDimensionUsesSparseCoefficients) {
  CounterRng rng({57, 0});
  std::vector<LabeledPoint> samples;
  const SubsetMask j = SubsetMask::from_coordinates(22, {3, 19});
  for (int i = 0; i < 400; ++i) {
    const auto x = static_cast<Mask>(rng.below(Mask{1} << 22));
    samples.push_back({x, oracle::chi(j.bits(), x, 22)});
  }
  const LearnResult r = stochastic_fourier(Dataset(22, samples), 2);
  EXPECT_EQ(r.report.subset, j);
  EXPECT_EQ(r.report.empirical_loss, 0.0);
}

TEST(ErmBruteforce, EqualsOptOfEmpiricalDistribution) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    CounterRng rng({58, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(data.dim(), 3)) + 1));
    EXPECT_NEAR(erm_bruteforce(data, k).report.empirical_loss,
                opt_exact(empirical_distribution(data), k).opt, 1e-12);
  }
}

TEST(L2Threshold, ExpectedLossBoundAndScanOptimality) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng({59, t});
    const Dataset data = random_dataset(rng, 6, 200);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(data.dim(), 3)) + 1));
    const LearnResult r = l2_threshold(data, k);
    const double theta = r.predictor.theta();
    EXPECT_GE(theta, -1.0);
    EXPECT_LE(theta, 1.0);
    EXPECT_LE(r.report.empirical_loss, 0.5 * r.report.empirical_square_loss + 1e-12);
    // No theta on a fine grid beats the scan.
    for (int i = -200; i <= 200; ++i) {
      const Predictor g(r.predictor.poly(), i / 200.0);
      EXPECT_LE(r.report.empirical_loss, empirical_loss(data, g).zero_one);
    }
  }
}

TEST(L2Threshold, WarnsWhenUnderdetermined) {
  const Dataset data(6, {{0, 1}, {1, -1}, {2, 1}});
  const LearnResult r = l2_threshold(data, 2);
  ASSERT_EQ(r.report.warnings.size(), 1U);
  EXPECT_EQ(r.report.empirical_loss, 0.0);
  EXPECT_TRUE(l2_threshold(data, 0).report.warnings.empty());
}

TEST(SignMmse, PredictsCellMajorityAndPlusWhenUnseen) {
  const Dataset data(2, {{0, -1}, {0, -1}, {0, 1}, {1, 1}, {2, 1}, {2, -1}});
  const LearnResult r = sign_mmse(data);
  EXPECT_EQ(r.predictor.predict(0), -1);
  EXPECT_EQ(r.predictor.predict(1), 1);
  EXPECT_EQ(r.predictor.predict(2), 1);
  EXPECT_EQ(r.predictor.predict(3), 1);
  EXPECT_NEAR(r.report.empirical_loss, 2.0 / 6, 1e-15);
  // Residuals: cell 0 mean -1/3, cell 2 mean 0.
  EXPECT_NEAR(r.report.empirical_square_loss, (2 * (4.0 / 9) + 16.0 / 9 + 2) / 6, 1e-15);
}

TEST(SignMmse, ApproachesBayesOptimum) {
  CounterRng rng({60, 0});
  const JointDistribution dist = random_distribution(6, rng);
  const Dataset data = sample(dist, 100000, {60, 1});
  const LearnResult r = sign_mmse(data);
  EXPECT_LE(exact_loss(dist, r.predictor).zero_one, bayes_opt(dist) + 0.01);
}

TEST(Learners, ExactLossImprovesWithMoreSamples) {
  const int d = 8;
  const SubsetMask j = SubsetMask::from_coordinates(d, {1, 4, 6});
  const JointDistribution dist =
      planted_junta_distribution(j, parity_table(3), uniform_marginal(d), 0.1);
  for (Algorithm a : {Algorithm::l2, Algorithm::fourier, Algorithm::erm}) {
    double small = 0.0;
    double large = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      small += exact_loss(dist, learn(a, sample(dist, 20, {61, seed}), 3).predictor).zero_one;
      large += exact_loss(dist, learn(a, sample(dist, 3000, {62, seed}), 3).predictor).zero_one;
    }
    EXPECT_LT(large, small) << to_string(a);
    EXPECT_NEAR(large / 10, 0.1, 1e-9) << to_string(a);
  }
}

TEST(Learners, Deterministic) {
  CounterRng rng({63, 0});
  const Dataset data = Sampler(random_distribution(7, rng)).draw(150, rng);
  for (Algorithm a : kAll) {
    const LearnResult x = learn(a, data, 2);
    const LearnResult y = learn(a, data, 2);
    EXPECT_EQ(x.predictor.poly(), y.predictor.poly());
    EXPECT_EQ(x.predictor.theta(), y.predictor.theta());
    EXPECT_EQ(x.report.subset, y.report.subset);
  }
}

}  // namespace
}  // namespace junta
