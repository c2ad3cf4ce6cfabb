#pragma once

#include <string>
#include <vector>

#include "junta/distribution.hpp"
#include "junta/rng.hpp"

namespace junta::cli {

/// A planted-junta distribution described by name.
///   table:    parity | majority | and | or | dictator | random, or an explicit
///             list of 2^k values +-1 such as "1,-1,-1,1" (cell z lists the
///             junta coordinates as the bits of z, lowest coordinate first).
///             "and" outputs -1 iff every junta coordinate is -1, "or" iff any
///             is; majority breaks ties toward +1.
///   marginal: uniform | product:<p> (each coordinate -1 with probability p)
///             | random
struct PlantedSpec {
  int dim = 0;
  std::vector<int> junta;  // 1-based coordinates
  std::string table = "parity";
  double eta = 0.0;
  std::string marginal = "uniform";
};

std::vector<int> named_truth_table(const std::string& name, int k, CounterRng& rng);
std::vector<double> named_marginal(const std::string& name, int dim, CounterRng& rng);

/// Random choices (random table or marginal) draw from `seed`.
JointDistribution build_planted(const PlantedSpec& spec, RngSeed seed);

/// Y is a fair coin independent of X, which is uniform.
JointDistribution uniform_label_distribution(int dim);

/// Parses "1,4,7" into {1, 4, 7}.
std::vector<int> parse_coordinate_list(const std::string& text);

}  // namespace junta::cli
