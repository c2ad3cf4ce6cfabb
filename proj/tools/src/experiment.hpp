#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "junta/distribution.hpp"
#include "junta/learners.hpp"
#include "planted.hpp"

namespace junta::cli {

struct ExperimentConfig {
  /// Planted-junta parameters, or a path to a distribution JSON file.
  std::variant<PlantedSpec, std::string> distribution;
  std::vector<Algorithm> algorithms;
  int k = 1;
  std::vector<std::size_t> n_grid;
  std::size_t seeds = 1;
  double delta = 0.05;
  std::optional<std::string> output;
};

/// Parses the TOML config. Relative distribution paths resolve against
/// `base_dir`. Throws junta::Error with a description of the bad key.
ExperimentConfig parse_experiment_config(const std::string& toml_text,
                                         const std::string& base_dir = ".");

struct ResultRow {
  Algorithm algorithm;
  std::size_t n = 0;
  std::size_t seed = 0;
  double emp_loss = 0.0;
  double exact_loss = 0.0;
  double opt = 0.0;
  Mask subset_mask = 0;
  double seconds = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // sorted by (algorithm name, n, seed)
  double opt = 0.0;
  double delta = 0.0;
};

/// Dataset (n_grid[i], seed s) is drawn from stream (i << 32) | s of
/// `base_seed` and shared by every algorithm.
ExperimentResult run_experiment(const ExperimentConfig& config, const JointDistribution& dist,
                                std::uint64_t base_seed);

JointDistribution load_experiment_distribution(const ExperimentConfig& config,
                                               std::uint64_t base_seed);

/// Rows, then a "# summary" block of median exact loss per (algorithm, n).
/// Seconds are written as 0 unless `with_timing`.
void write_results_csv(std::ostream& out, const ExperimentResult& result, bool with_timing);

double median(std::vector<double> values);

}  // namespace junta::cli
