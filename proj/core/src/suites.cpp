#include "junta/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "junta/fourier.hpp"
#include "junta/oracle.hpp"
#include "junta/random_instances.hpp"
#include "junta/regression.hpp"

namespace junta {

namespace {

constexpr double kInequalitySlack = 1e-12;
constexpr double kExactTolerance = 1e-12;
constexpr double kTransformTolerance = 1e-10;

// Accumulates per-trial gaps; a trial is violated when its gap exceeds the
// tolerance.
class Tally {
 public:
  Tally(std::string name, const SuiteOptions& opts, std::size_t default_trials)
      : start_(std::chrono::steady_clock::now()) {
    result_.check = std::move(name);
    result_.seed = opts.seed;
    result_.trials = opts.trials ? opts.trials : default_trials;
  }

  std::size_t trials() const { return result_.trials; }
  RngSeed trial_seed(std::size_t i) const { return {result_.seed, i}; }

  void record(std::size_t trial, double gap, double tolerance) {
    if (first_ || gap > result_.max_gap) result_.max_gap = gap;
    first_ = false;
    if (!(gap <= tolerance)) {
      ++result_.violations;
      if (!result_.failing_trial) result_.failing_trial = trial;
    }
  }

  CheckResult finish(std::string note = {}) {
    result_.note = std::move(note);
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

  CheckResult& result() { return result_; }

 private:
  CheckResult result_;
  bool first_ = true;
  std::chrono::steady_clock::time_point start_;
};

int random_dim(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

// Loss of the predictor given by a +-1 table over the cells of `subset`,
// truth table bit z set meaning -1 on cell z. Computed straight from the
// probability table.
double table_predictor_loss(const JointDistribution& dist, Mask subset, std::uint64_t table) {
  double loss = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    const bool minus = (table >> gather_bits(x, subset)) & 1;
    loss += minus ? dist.prob(x, 1) : dist.prob(x, -1);
  }
  return loss;
}

std::string format_rate(std::size_t hits, std::size_t trials) {
  std::ostringstream s;
  s << hits << "/" << trials;
  return s.str();
}

}  // namespace

bool CheckResult::passed() const noexcept {
  if (trials == 0) return true;
  if (allowed_violation_rate) {
    return static_cast<double>(violations) <=
           *allowed_violation_rate * static_cast<double>(trials) + 1e-9;
  }
  return violations == 0;
}

CheckResult check_eq1(const SuiteOptions& opts) {
  Tally t("eq1", opts, 100);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 8);
    const JointDistribution dist = random_distribution(d, rng);
    const Predictor g = random_predictor(d, rng);
    const LossReport r = exact_loss(dist, g);
    const double gap = std::max(std::abs(r.zero_one - (0.5 - 0.5 * r.inner)),
                                std::abs(r.zero_one - 0.25 * r.square));
    t.record(i, gap, kExactTolerance);
  }
  return t.finish();
}

CheckResult check_spectrum_loss(const SuiteOptions& opts) {
  Tally t("spectrum_loss", opts, 100);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 8);
    const JointDistribution dist = random_distribution(d, rng);
    const Predictor g = random_predictor(d, rng);
    t.record(i, std::abs(loss_from_spectrum(dist, g) - exact_loss(dist, g).zero_one),
             kTransformTolerance);
  }
  return t.finish();
}

CheckResult check_bayes_optimality(const SuiteOptions& opts) {
  Tally t("bayes_optimality", opts, 50);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 4);
    const JointDistribution dist = random_distribution(d, rng);
    const Mask all = full_mask(d);
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t tables = std::uint64_t{1} << (std::size_t{1} << d);
    for (std::uint64_t table = 0; table < tables; ++table) {
      best = std::min(best, table_predictor_loss(dist, all, table));
    }
    const Predictor mmse_sign(mmse_projection_exact(dist, SubsetMask::all(d)));
    const double attained = exact_loss(dist, mmse_sign).zero_one;
    t.record(i, std::max(std::abs(best - bayes_opt(dist)), std::abs(attained - best)),
             kExactTolerance);
  }
  return t.finish();
}

CheckResult check_opt_characterizations(const SuiteOptions& opts) {
  Tally t("opt_characterizations", opts, 50);
  constexpr int d = 6;
  constexpr int k = 2;
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const JointDistribution dist = random_distribution(d, rng);
    double brute = std::numeric_limits<double>::infinity();
    for (const auto& subset : enumerate_subsets(d, k, SubsetRange::exactly_k)) {
      for (std::uint64_t table = 0; table < (1U << (1U << k)); ++table) {
        brute = std::min(brute, table_predictor_loss(dist, subset.bits(), table));
      }
    }
    const double exact = opt_exact(dist, k).opt;
    const double fourier = opt_fourier(dist, k);
    t.record(i, std::max(std::abs(exact - fourier), std::abs(exact - brute)),
             kExactTolerance);
  }
  return t.finish();
}

CheckResult check_opt_monotone(const SuiteOptions& opts) {
  Tally t("opt_monotone", opts, 50);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 6);
    const JointDistribution dist = random_distribution(d, rng);
    double gap = -std::numeric_limits<double>::infinity();
    double previous = opt_exact(dist, 0).opt;
    for (int k = 1; k <= d; ++k) {
      const double current = opt_exact(dist, k).opt;
      gap = std::max(gap, current - previous);
      previous = current;
    }
    gap = std::max(gap, bayes_opt(dist) - previous);
    t.record(i, gap, kInequalitySlack);
  }
  return t.finish();
}

CheckResult check_parseval(const SuiteOptions& opts) {
  Tally t("parseval", opts, 100);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 10);
    std::vector<double> f(std::size_t{1} << d);
    for (double& v : f) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> coeffs = uniform_fourier_dense(f);
    double energy = 0.0;
    double spectral = 0.0;
    for (double v : f) energy += v * v;
    for (double c : coeffs) spectral += c * c;
    const std::vector<double> back = inverse_fourier(Spectrum::from_dense(coeffs));
    double roundtrip = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      roundtrip = std::max(roundtrip, std::abs(back[x] - f[x]));
    }
    t.record(i, std::max(std::abs(std::ldexp(energy, -d) - spectral), roundtrip),
             kTransformTolerance);
  }
  return t.finish();
}

CheckResult check_mmse_sign_bound(const SuiteOptions& opts) {
  Tally t("mmse_sign_bound", opts, 500);
  std::size_t squared_form_violations = 0;
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 6);
    const JointDistribution dist = random_distribution(d, rng);
    const SubsetMask subset = rng.coin(0.5) ? SubsetMask::all(d) : random_subset(d, rng);
    // ||h||_inf <= 2: coefficients bounded by 2 / (number of monomials).
    const double scale = 2.0 / static_cast<double>(std::size_t{1} << subset.size());
    SparsePolynomial h = random_polynomial(subset, subset.size(), scale, rng);
    if (rng.coin(0.3)) {
      // Perturbations of the MMSE estimate exercise the small-distance regime.
      const SparsePolynomial mmse = mmse_projection_exact(dist, subset);
      for (const auto& [s, c] : h.terms()) h.set(s, 0.05 * c + mmse.coeff(s));
    }
    const MmseSignBound b = mmse_sign_bound(dist, h, subset);
    if (b.lhs > b.rhs_squared_argument + kInequalitySlack) ++squared_form_violations;
    t.record(i, b.gap(), kInequalitySlack);
  }
  return t.finish("squared-argument form violated in " +
                  format_rate(squared_form_violations, t.trials()) + " trials (reported only)");
}

CheckResult check_mmse_sign_boundary(const SuiteOptions& opts) {
  Tally t("mmse_sign_boundary", opts, 50);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 6);
    const JointDistribution dist = random_distribution(d, rng);
    double p_minus = 0.0;
    for (Mask x = 0; x < dist.num_points(); ++x) p_minus += dist.prob(x, -1);

    // h = 0 predicts +1 everywhere, so its loss is P(Y = -1).
    const MmseSignBound zero = mmse_sign_bound(dist, SparsePolynomial(d));
    // h = Y_MMSE makes the bound tight.
    const MmseSignBound tight =
        mmse_sign_bound(dist, mmse_projection_exact(dist, SubsetMask::all(d)));
    const double gap = std::max({std::abs(zero.lhs - p_minus), zero.gap(),
                                 std::abs(tight.lhs - tight.opt_z), tight.gap()});
    t.record(i, gap, kExactTolerance);
  }
  return t.finish();
}

CheckResult check_fourier_framework(const SuiteOptions& opts) {
  Tally t("fourier_framework", opts, 200);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 6);
    const JointDistribution dist = random_distribution(d, rng);
    const SubsetMask subset = random_subset(d, rng);
    const double pick = rng.uniform();
    SparsePolynomial h(d);
    if (pick < 0.4) {
      h = random_polynomial(subset, subset.size(), 1.0, rng);
    } else {
      // Near f^J, at the scale of its coefficients.
      const SparsePolynomial f = fourier_projection(dist, subset);
      const double noise = pick < 0.7 ? 0.1 : 1.0;
      const SparsePolynomial delta =
          random_polynomial(subset, subset.size(), noise * std::ldexp(1.0, -d), rng);
      for (const auto& [s, c] : f.terms()) h.set(s, c + delta.coeff(s));
    }
    t.record(i, fourier_framework_bound(dist, subset, h).gap(), kInequalitySlack);
  }
  return t.finish();
}

CheckResult check_threshold_expectation(const SuiteOptions& opts) {
  Tally t("threshold_expectation", opts, 200);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    CounterRng rng(t.trial_seed(i));
    const int d = random_dim(rng, 1, 6);
    const JointDistribution dist = random_distribution(d, rng);
    const std::size_t n = 1 + rng.below(60);
    const Dataset data = Sampler(dist).draw(n, rng);
    const int degree = random_dim(rng, 0, d);
    const SparsePolynomial p =
        random_polynomial(SubsetMask::all(d), degree, 2.0, rng, rng.uniform(0.2, 1.0));
    const ThresholdExpectation e = threshold_expectation(data, p);
    t.record(i, e.expected_loss - e.bound, kInequalitySlack);
  }
  return t.finish();
}

namespace {

struct Deviation {
  double sup = 0.0;
  double bound = 0.0;
};

Deviation concentration_trial(const ConcentrationSetup& setup, RngSeed seed) {
  CounterRng rng(seed);
  const JointDistribution dist = random_distribution(setup.dim, rng);
  const Dataset data = Sampler(dist).draw(setup.n, rng);
  const std::vector<double> exact = stochastic_spectrum(dist);
  std::vector<double> empirical(dist.num_points(), 0.0);
  for (const auto& s : data) empirical[s.x] += s.y;
  walsh_hadamard(empirical);
  const double scale = std::ldexp(1.0 / static_cast<double>(setup.n), -setup.dim);
  const auto subsets = enumerate_subsets(setup.dim, setup.max_order, SubsetRange::up_to_k);
  Deviation out;
  for (const auto& s : subsets) {
    out.sup = std::max(out.sup, std::abs(empirical[s.bits()] * scale - exact[s.bits()]));
  }
  out.bound = concentration_bound(setup.n, subsets.size(), setup.delta, setup.dim);
  return out;
}

}  // namespace

ConcentrationStats concentration_trials(const ConcentrationSetup& setup,
                                        std::uint64_t seed, std::size_t trials,
                                        double bound_scale) {
  ConcentrationStats stats;
  stats.trials = trials;
  stats.max_gap = trials ? -std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Deviation dev = concentration_trial(setup, {seed, i});
    const double gap = dev.sup - bound_scale * dev.bound;
    stats.max_gap = std::max(stats.max_gap, gap);
    if (gap > 0.0) {
      ++stats.violations;
      if (!stats.first_violation) stats.first_violation = i;
    }
  }
  return stats;
}

CheckResult check_concentration(const SuiteOptions& opts) {
  const ConcentrationSetup setup;
  Tally t("concentration", opts, 500);
  std::size_t wide_violations = 0;
  for (std::size_t i = 0; i < t.trials(); ++i) {
    const Deviation dev = concentration_trial(setup, t.trial_seed(i));
    t.record(i, dev.sup - dev.bound, 0.0);
    if (dev.sup > 2.0 * dev.bound) ++wide_violations;
  }
  t.result().allowed_violation_rate = setup.delta + setup.slack;
  return t.finish("bound exceeded in " + format_rate(t.result().violations, t.trials()) +
                  " trials; with twice the bound in " +
                  format_rate(wide_violations, t.trials()));
}

const std::vector<SuiteInfo>& verification_suites() {
  static const std::vector<SuiteInfo> suites{
      {"eq1", "0-1 loss = 1/2 - <Y,g>/2 = ||Y - g||^2 / 4", 100, check_eq1},
      {"spectrum_loss", "loss from stochastic Fourier coefficients equals exact loss", 100,
       check_spectrum_loss},
      {"bayes_optimality", "sign of E[Y|X] is optimal among all predictors (d <= 4)", 50,
       check_bayes_optimality},
      {"opt_characterizations", "opt via conditional means = opt via f^J = junta enumeration",
       50, check_opt_characterizations},
      {"opt_monotone", "opt over k-juntas is non-increasing in k", 50, check_opt_monotone},
      {"parseval", "Walsh-Hadamard round trip and Parseval", 100, check_parseval},
      {"mmse_sign_bound", "P(Y != sign h) <= opt_Z + U(||Y_MMSE - h||)", 500,
       check_mmse_sign_bound},
      {"mmse_sign_boundary", "sign(0) = +1 boundary and tight case of the MMSE bound", 50,
       check_mmse_sign_boundary},
      {"fourier_framework", "loss of sign h <= 1/2 - ||f^J||_1/2 + U(2^d ||f^J - h||)", 200,
       check_fourier_framework},
      {"threshold_expectation", "E_theta loss of sign(p - theta) <= square loss / 2", 200,
       check_threshold_expectation},
      {"concentration", "sup deviation of empirical coefficients within the bound", 500,
       check_concentration},
  };
  return suites;
}

const SuiteInfo* find_suite(std::string_view name) {
  for (const auto& s : verification_suites()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace junta
