#pragma once

// Randomized verification suites for the loss identities and inequalities.
// Trial i of a suite draws its instance from RngSeed{seed, i}, so a failing
// instance is reproduced from (seed, trial) alone.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace junta {

inline constexpr std::uint64_t kDefaultVerifySeed = 20230817;

struct CheckResult {
  std::string check;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Identities: max |difference|. Inequalities: max (lhs - rhs).
  double max_gap = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> failing_trial;
  /// Suites with a tolerated violation rate (the concentration check) set
  /// this; otherwise any violation fails.
  std::optional<double> allowed_violation_rate;
  std::string note;
  double seconds = 0.0;

  bool passed() const noexcept;
};

struct SuiteOptions {
  std::uint64_t seed = kDefaultVerifySeed;
  /// 0 selects the suite's default trial count.
  std::size_t trials = 0;
};

struct SuiteInfo {
  std::string name;
  std::string description;
  std::size_t default_trials;
  std::function<CheckResult(const SuiteOptions&)> run;
};

/// All suites in a fixed order.
const std::vector<SuiteInfo>& verification_suites();
const SuiteInfo* find_suite(std::string_view name);

// Individual suites.
CheckResult check_eq1(const SuiteOptions& opts);                // 100 trials
CheckResult check_spectrum_loss(const SuiteOptions& opts);      // 100 trials
CheckResult check_bayes_optimality(const SuiteOptions& opts);   // 50 trials
CheckResult check_opt_characterizations(const SuiteOptions& opts);  // 50 trials
CheckResult check_opt_monotone(const SuiteOptions& opts);       // 50 trials
CheckResult check_parseval(const SuiteOptions& opts);           // 100 trials
CheckResult check_mmse_sign_bound(const SuiteOptions& opts);    // 500 trials
CheckResult check_mmse_sign_boundary(const SuiteOptions& opts); // 50 trials
CheckResult check_fourier_framework(const SuiteOptions& opts);  // 200 trials
CheckResult check_threshold_expectation(const SuiteOptions& opts);  // 200 trials
CheckResult check_concentration(const SuiteOptions& opts);      // 500 trials

/// Parameters of the concentration suite.
struct ConcentrationSetup {
  int dim = 8;
  std::size_t n = 2000;
  int max_order = 2;
  double delta = 0.05;
  double slack = 0.03;
};

/// Fraction of trials whose sup deviation exceeds `bound_scale` times the
/// concentration bound; exposed so callers can also report other constants.
struct ConcentrationStats {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_gap = 0.0;
  std::optional<std::uint64_t> first_violation;
};
ConcentrationStats concentration_trials(const ConcentrationSetup& setup,
                                        std::uint64_t seed, std::size_t trials,
                                        double bound_scale = 1.0);

}  // namespace junta
