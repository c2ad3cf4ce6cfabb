#pragma once

// File formats:
//   Dataset CSV          header x1,...,xd,y; values 1 or -1; LF line endings.
//   Distribution JSON    {"dim": d, "table": [{"x": mask, "y": 1|-1, "p": float}]}
//   Spectrum JSON        {"dim": d, "coeffs": [{"s": mask, "v": float}]}
//   Model JSON           {"type": "sign-poly", "dim": d, "subset": mask,
//                         "terms": [{"s": mask, "c": float}], "theta": float}
//   Check result JSON    {"check": name, "trials": n, "violations": v, "max_gap": g}
//
// Floats are written in shortest round-trip form.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "junta/distribution.hpp"
#include "junta/fourier.hpp"
#include "junta/learners.hpp"
#include "junta/oracle.hpp"
#include "junta/polynomial.hpp"
#include "junta/suites.hpp"

namespace junta {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

void write_dataset_csv(std::ostream& out, const Dataset& data);
/// Throws ParseError naming the offending line.
Dataset read_dataset_csv(std::istream& in);

std::string distribution_to_json(const JointDistribution& dist);
JointDistribution distribution_from_json(std::string_view text);

/// Drops coefficients with |v| < 1e-15.
std::string spectrum_to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(std::string_view text);

struct Model {
  Predictor predictor;
  SubsetMask subset;
};
std::string model_to_json(const Predictor& predictor, const SubsetMask& subset);
Model model_from_json(std::string_view text);

/// `with_timing` = false writes seconds as 0 so reruns are byte-identical.
std::string report_to_json(const LearnReport& report, bool with_timing);
std::string loss_report_to_json(const LossReport& loss);
std::string check_result_to_json(const CheckResult& result);
std::string check_results_to_json(std::span<const CheckResult> results);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace junta
