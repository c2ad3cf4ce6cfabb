#include "experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <tuple>

#include <toml.hpp>

#include "junta/error.hpp"
#include "junta/io.hpp"
#include "junta/oracle.hpp"

namespace junta::cli {

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw Error("experiment config: " + key + ": " + why);
}

template <typename T>
T required(const toml::table& t, const std::string& key) {
  const auto* node = t.get(key);
  if (!node) bad_key(key, "missing");
  const auto v = node->value<T>();
  if (!v) bad_key(key, "wrong type");
  return *v;
}

template <typename T>
T optional_value(const toml::table& t, const std::string& key, T fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  const auto v = node->value<T>();
  if (!v) bad_key(key, "wrong type");
  return *v;
}

const toml::array& required_array(const toml::table& t, const std::string& key) {
  const auto* node = t.get(key);
  if (!node) bad_key(key, "missing");
  const auto* arr = node->as_array();
  if (!arr) bad_key(key, "expected an array");
  return *arr;
}

std::int64_t integer_item(const toml::node& node, const std::string& key) {
  const auto v = node.value<std::int64_t>();
  if (!v || !node.is_integer()) bad_key(key, "expected integers");
  return *v;
}

PlantedSpec parse_planted(const toml::table& t) {
  PlantedSpec spec;
  spec.dim = static_cast<int>(required<std::int64_t>(t, "d"));
  for (const auto& item : required_array(t, "junta")) {
    spec.junta.push_back(static_cast<int>(integer_item(item, "distribution.junta")));
  }
  spec.table = optional_value<std::string>(t, "table", spec.table);
  spec.eta = optional_value<double>(t, "eta", spec.eta);
  spec.marginal = optional_value<std::string>(t, "marginal", spec.marginal);
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& toml_text,
                                         const std::string& base_dir) {
  toml::table t;
  try {
    t = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "experiment config: " << e.description() << " at line "
        << e.source().begin.line;
    throw Error(msg.str());
  }

  ExperimentConfig c;
  const auto* dist = t.get("distribution");
  if (!dist) bad_key("distribution", "missing");
  if (const auto* path = dist->as_string()) {
    std::filesystem::path p(path->get());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    c.distribution = p.string();
  } else if (const auto* table = dist->as_table()) {
    c.distribution = parse_planted(*table);
  } else {
    bad_key("distribution", "expected a table or a path string");
  }

  for (const auto& item : required_array(t, "algorithms")) {
    const auto name = item.value<std::string>();
    if (!name) bad_key("algorithms", "expected strings");
    const auto alg = parse_algorithm(*name);
    if (!alg) {
      bad_key("algorithms",
              "unknown algorithm \"" + *name + "\" (l2, fourier, erm, threshold, mmse-sign)");
    }
    c.algorithms.push_back(*alg);
  }
  if (c.algorithms.empty()) bad_key("algorithms", "must not be empty");

  c.k = static_cast<int>(required<std::int64_t>(t, "k"));
  if (c.k < 0) bad_key("k", "must be non-negative");

  for (const auto& item : required_array(t, "n_grid")) {
    const auto n = integer_item(item, "n_grid");
    if (n < 1) bad_key("n_grid", "sample sizes must be positive");
    if (!c.n_grid.empty() && static_cast<std::size_t>(n) <= c.n_grid.back()) {
      bad_key("n_grid", "must be strictly increasing");
    }
    c.n_grid.push_back(static_cast<std::size_t>(n));
  }
  if (c.n_grid.empty()) bad_key("n_grid", "must not be empty");

  const auto seeds = required<std::int64_t>(t, "seeds");
  if (seeds < 1) bad_key("seeds", "must be at least 1");
  c.seeds = static_cast<std::size_t>(seeds);

  c.delta = optional_value<double>(t, "delta", c.delta);
  if (!(c.delta > 0.0 && c.delta < 1.0)) bad_key("delta", "must lie in (0, 1)");

  if (const auto* out = t.get("output")) {
    const auto v = out->value<std::string>();
    if (!v) bad_key("output", "expected a path string");
    c.output = *v;
  }
  return c;
}

JointDistribution load_experiment_distribution(const ExperimentConfig& config,
                                               std::uint64_t base_seed) {
  if (const auto* path = std::get_if<std::string>(&config.distribution)) {
    return distribution_from_json(read_file(*path));
  }
  return build_planted(std::get<PlantedSpec>(config.distribution),
                       RngSeed{base_seed, ~std::uint64_t{0}});
}

ExperimentResult run_experiment(const ExperimentConfig& config, const JointDistribution& dist,
                                std::uint64_t base_seed) {
  if (config.k > dist.dim()) {
    throw Error("experiment: k = " + std::to_string(config.k) + " exceeds d = " +
                std::to_string(dist.dim()));
  }
  ExperimentResult result;
  result.opt = opt_exact(dist, config.k).opt;
  result.delta = config.delta;
  const Sampler sampler(dist);

  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const std::size_t n = config.n_grid[i];
    for (std::size_t s = 0; s < config.seeds; ++s) {
      CounterRng rng(RngSeed{base_seed, (std::uint64_t{i} << 32) | s});
      const Dataset data = sampler.draw(n, rng);
      for (const Algorithm alg : config.algorithms) {
        try {
          const LearnResult r = learn(alg, data, config.k);
          result.rows.push_back({alg, n, s, r.report.empirical_loss,
                                 exact_loss(dist, r.predictor).zero_one, result.opt,
                                 r.report.subset.bits(), r.report.seconds});
        } catch (const Error& e) {
          throw Error("experiment: algorithm " + std::string(to_string(alg)) + ", n = " +
                      std::to_string(n) + ", seed " + std::to_string(s) + ": " + e.what());
        }
      }
    }
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::make_tuple(to_string(a.algorithm), a.n, a.seed) <
           std::make_tuple(to_string(b.algorithm), b.n, b.seed);
  });
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

void write_results_csv(std::ostream& out, const ExperimentResult& result, bool with_timing) {
  out << "algorithm,n,seed,emp_loss,exact_loss,opt,subset_mask,seconds\n";
  for (const auto& r : result.rows) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.seed << ','
        << format_double(r.emp_loss) << ',' << format_double(r.exact_loss) << ','
        << format_double(r.opt) << ',' << r.subset_mask << ','
        << format_double(with_timing ? r.seconds : 0.0) << '\n';
  }
  out << "# summary delta=" << format_double(result.delta) << '\n';
  out << "# algorithm,n,median_exact_loss\n";
  for (std::size_t i = 0; i < result.rows.size();) {
    std::size_t j = i;
    std::vector<double> losses;
    while (j < result.rows.size() && result.rows[j].algorithm == result.rows[i].algorithm &&
           result.rows[j].n == result.rows[i].n) {
      losses.push_back(result.rows[j].exact_loss);
      ++j;
    }
    out << "# " << to_string(result.rows[i].algorithm) << ',' << result.rows[i].n << ','
        << format_double(median(std::move(losses))) << '\n';
    i = j;
  }
}

}  // namespace junta::cli
