#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "experiment.hpp"
#include "junta/error.hpp"
#include "junta/io.hpp"
#include "junta/learners.hpp"
#include "junta/oracle.hpp"
#include "junta/suites.hpp"
#include "planted.hpp"

namespace junta::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  std::string format = "json";
};

// Writes to --out when given, otherwise to stdout.
void emit(const Globals& g, std::ostream& out, std::string_view text) {
  if (g.out_path.empty()) {
    out << text;
  } else {
    write_file(g.out_path, text);
  }
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  try {
    return read_dataset_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string opt_summary(const Globals& g, int k, const OptResult& opt) {
  std::ostringstream s;
  if (g.format == "csv") {
    s << "k,opt,subset_mask\n" << k << ',' << format_double(opt.opt) << ','
      << opt.subset.bits() << '\n';
  } else {
    s << "{\"k\": " << k << ", \"opt\": " << format_double(opt.opt)
      << ", \"subset\": " << opt.subset.bits() << "}\n";
  }
  return s.str();
}

struct GenDistArgs {
  int d = 0;
  std::string junta;
  std::string table = "parity";
  double eta = 0.0;
  std::string marginal = "uniform";
  bool uniform_label = false;
  std::string in;
  int k = -1;
};

int gen_dist(const Globals& g, const GenDistArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<JointDistribution> dist;
  int default_k = 1;
  if (!a.in.empty()) {
    dist = distribution_from_json(read_file(a.in));
  } else if (a.d <= 0) {
    throw Error("gen-dist needs --d (or --in)");
  } else if (a.uniform_label) {
    dist = uniform_label_distribution(a.d);
  } else {
    if (a.junta.empty()) throw Error("gen-dist needs --junta (or --uniform-label)");
    PlantedSpec spec{a.d, parse_coordinate_list(a.junta), a.table, a.eta, a.marginal};
    default_k = static_cast<int>(spec.junta.size());
    dist = build_planted(spec, RngSeed{g.seed, 0});
  }
  const int k = a.k >= 0 ? a.k : std::min(default_k, dist->dim());

  const std::string json = distribution_to_json(*dist);
  std::ostream& info = g.out_path.empty() ? err : out;
  emit(g, out, json);
  if (dist->dim() > 16) {
    info << "opt not computed: d = " << dist->dim() << " exceeds 16\n";
  } else {
    info << opt_summary(g, k, opt_exact(*dist, k));
  }
  return kExitOk;
}

int sample_cmd(const Globals& g, const std::string& dist_path, std::size_t n,
               std::ostream& out) {
  const JointDistribution dist = distribution_from_json(read_file(dist_path));
  const Dataset data = sample(dist, n, RngSeed{g.seed, 0});
  std::ostringstream csv;
  write_dataset_csv(csv, data);
  emit(g, out, csv.str());
  return kExitOk;
}

struct LearnArgs {
  std::string alg;
  int k = 1;
  std::string data;
  std::string select;
  bool timing = false;
};

int learn_cmd(const Globals& g, const LearnArgs& a, std::ostream& out) {
  const auto alg = parse_algorithm(a.alg);
  if (!alg) {
    throw Error("unknown algorithm \"" + a.alg + "\" (l2, fourier, erm, threshold, mmse-sign)");
  }
  if (g.out_path.empty()) throw Error("learn needs --out <model.json>");
  if (!a.select.empty() && *alg != Algorithm::l2) {
    throw Error("--select applies to --alg l2 only");
  }
  const Dataset data = load_dataset(a.data);
  LearnResult r = [&] {
    if (*alg == Algorithm::l2 && a.select == "square") {
      return l2_algorithm(data, a.k, SubsetSelection::square_loss);
    }
    return learn(*alg, data, a.k);
  }();
  write_file(g.out_path, model_to_json(r.predictor, r.report.subset));
  if (g.format == "csv") {
    out << "algorithm,subset_mask,empirical_loss,empirical_square_loss,seconds\n"
        << r.report.algorithm << ',' << r.report.subset.bits() << ','
        << format_double(r.report.empirical_loss) << ','
        << format_double(r.report.empirical_square_loss) << ','
        << format_double(a.timing ? r.report.seconds : 0.0) << '\n';
  } else {
    out << report_to_json(r.report, a.timing);
  }
  return kExitOk;
}

int eval_cmd(const Globals& g, const std::string& model_path, const std::string& dist_path,
             const std::string& data_path, std::ostream& out) {
  if (dist_path.empty() == data_path.empty()) {
    throw Error("eval needs exactly one of --dist and --data");
  }
  const Model model = model_from_json(read_file(model_path));
  const LossReport loss = dist_path.empty()
                              ? empirical_loss(load_dataset(data_path), model.predictor)
                              : exact_loss(distribution_from_json(read_file(dist_path)),
                                           model.predictor);
  if (g.format == "csv") {
    emit(g, out, "zero_one,square,inner\n" + format_double(loss.zero_one) + ',' +
                     format_double(loss.square) + ',' + format_double(loss.inner) + '\n');
  } else {
    emit(g, out, loss_report_to_json(loss));
  }
  return kExitOk;
}

int experiment_cmd(const Globals& g, const std::string& config_path, bool timing,
                   std::ostream& out) {
  const std::string base_dir = std::filesystem::path(config_path).parent_path().string();
  const ExperimentConfig config =
      parse_experiment_config(read_file(config_path), base_dir.empty() ? "." : base_dir);
  const JointDistribution dist = load_experiment_distribution(config, g.seed);
  const ExperimentResult result = run_experiment(config, dist, g.seed);
  std::ostringstream csv;
  write_results_csv(csv, result, timing);
  if (!g.out_path.empty()) {
    write_file(g.out_path, csv.str());
  } else if (config.output) {
    write_file(*config.output, csv.str());
  } else {
    out << csv.str();
  }
  return kExitOk;
}

int verify_cmd(const Globals& g, const std::vector<std::string>& checks, std::size_t trials,
               std::ostream& out, std::ostream& err) {
  std::vector<const SuiteInfo*> selected;
  if (checks.empty()) {
    for (const auto& s : verification_suites()) selected.push_back(&s);
  } else {
    for (const auto& name : checks) {
      const SuiteInfo* s = find_suite(name);
      if (!s) {
        std::string known;
        for (const auto& info : verification_suites()) known += " " + info.name;
        throw Error("unknown check \"" + name + "\"; available:" + known);
      }
      selected.push_back(s);
    }
  }
  const SuiteOptions opts{g.seed_given ? g.seed : kDefaultVerifySeed, trials};
  std::vector<CheckResult> results;
  bool all_passed = true;
  for (const SuiteInfo* s : selected) {
    CheckResult r = s->run(opts);
    err << r.check << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.violations << '/'
        << r.trials << " violations";
    if (r.failing_trial) err << ", first at seed " << r.seed << " trial " << *r.failing_trial;
    err << ")\n";
    all_passed = all_passed && r.passed();
    results.push_back(std::move(r));
  }
  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "check,trials,violations,max_gap,passed,seed,failing_trial\n";
    for (const auto& r : results) {
      csv << r.check << ',' << r.trials << ',' << r.violations << ','
          << format_double(r.max_gap) << ',' << (r.passed() ? "true" : "false") << ','
          << r.seed << ',';
      if (r.failing_trial) csv << *r.failing_trial;
      csv << '\n';
    }
    emit(g, out, csv.str());
  } else {
    emit(g, out, check_results_to_json(results));
  }
  return all_passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agnostic learning of k-juntas by polynomial regression and Fourier methods",
               "junta"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed (u64)");
  app.add_option("--out", g.out_path, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::function<int()> action;

  GenDistArgs gd;
  auto* gen = app.add_subcommand("gen-dist", "Write a distribution JSON and print opt");
  gen->add_option("--d", gd.d, "Dimension");
  gen->add_option("--junta", gd.junta, "Junta coordinates, 1-based, e.g. 1,4,7");
  gen->add_option("--table", gd.table,
                  "parity, majority, and, or, dictator, random, or 2^k values +-1");
  gen->add_option("--eta", gd.eta, "Label flip probability in [0, 1/2)");
  gen->add_option("--marginal", gd.marginal, "uniform, product:<p> or random");
  gen->add_flag("--uniform-label", gd.uniform_label, "Y is a fair coin independent of X");
  gen->add_option("--in", gd.in, "Load and re-save an existing distribution JSON");
  gen->add_option("--k", gd.k, "Junta size for the printed opt");
  gen->callback([&] { action = [&] { return gen_dist(g, gd, out, err); }; });

  std::string dist_path;
  std::size_t n = 0;
  auto* smp = app.add_subcommand("sample", "Draw a dataset CSV from a distribution");
  smp->add_option("--dist", dist_path, "Distribution JSON")->required();
  smp->add_option("--n", n, "Sample size")->required()->check(CLI::PositiveNumber);
  smp->callback([&] { action = [&] { return sample_cmd(g, dist_path, n, out); }; });

  LearnArgs la;
  auto* lrn = app.add_subcommand("learn", "Train a predictor; model to --out, report to stdout");
  lrn->add_option("--alg", la.alg, "l2, fourier, erm, threshold or mmse-sign")->required();
  lrn->add_option("--k", la.k, "Junta size / polynomial degree");
  lrn->add_option("--data", la.data, "Training CSV")->required();
  lrn->add_option("--select", la.select, "l2 subset selection")
      ->check(CLI::IsMember({"zero-one", "square"}));
  lrn->add_flag("--timing", la.timing, "Report wall-clock seconds");
  lrn->callback([&] { action = [&] { return learn_cmd(g, la, out); }; });

  std::string model_path;
  std::string eval_dist;
  std::string eval_data;
  auto* ev = app.add_subcommand("eval", "Exact or empirical loss of a model");
  ev->add_option("--model", model_path, "Model JSON")->required();
  ev->add_option("--dist", eval_dist, "Distribution JSON (exact loss)");
  ev->add_option("--data", eval_data, "Dataset CSV (empirical loss)");
  ev->callback(
      [&] { action = [&] { return eval_cmd(g, model_path, eval_dist, eval_data, out); }; });

  std::string config_path;
  bool exp_timing = false;
  auto* exp = app.add_subcommand("experiment", "Run a TOML-configured learning experiment");
  exp->add_option("--config", config_path, "Experiment TOML")->required();
  exp->add_flag("--timing", exp_timing, "Report wall-clock seconds");
  exp->callback(
      [&] { action = [&] { return experiment_cmd(g, config_path, exp_timing, out); }; });

  std::vector<std::string> checks;
  std::size_t trials = 0;
  auto* ver = app.add_subcommand("verify", "Run the randomized identity and bound checks");
  ver->add_option("--check", checks, "Run only these checks (repeatable)");
  ver->add_option("--trials", trials, "Trials per check (default: per-check)");
  ver->callback([&] { action = [&] { return verify_cmd(g, checks, trials, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    g.seed_given = seed_opt->count() > 0;
  } catch (const CLI::ParseError& e) {
    // Help requests arrive here as well, with a success exit code.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "junta: error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace junta::cli
