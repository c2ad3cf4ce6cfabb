#include "junta/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "junta/error.hpp"

namespace junta {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

template <typename T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": field \"" + key + "\": " + e.what());
  }
}

Mask mask_field(const Json& j, const char* key, int dim, const char* what) {
  const auto v = field<std::int64_t>(j, key, what);
  if (v < 0 || (static_cast<std::uint64_t>(v) & ~std::uint64_t{full_mask(dim)}) != 0) {
    throw ParseError(std::string(what) + ": mask " + std::to_string(v) +
                     " out of range for d = " + std::to_string(dim));
  }
  return static_cast<Mask>(v);
}

// Numbers are written through format_double so that every file uses the
// same shortest round-trip spelling.
Json number(double v) { return Json::parse(format_double(v)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw Error("cannot format non-finite value");
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (int j = 1; j <= data.dim(); ++j) out << 'x' << j << ',';
  out << "y\n";
  std::string row;
  for (const auto& s : data) {
    row.clear();
    for (int j = 0; j < data.dim(); ++j) row += (s.x >> j) & 1U ? "-1," : "1,";
    row += s.y == 1 ? "1\n" : "-1\n";
    out << row;
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
  const auto header = split_commas(trim_cr(line));
  const int dim = static_cast<int>(header.size()) - 1;
  if (dim < 1 || dim > kMaxPointDim) {
    throw ParseError("header needs between 1 and " + std::to_string(kMaxPointDim) +
                     " feature columns plus y", line_no);
  }
  for (int j = 0; j < dim; ++j) {
    if (header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1)) {
      throw ParseError("header column " + std::to_string(j + 1) + " should be x" +
                       std::to_string(j + 1), line_no);
    }
  }
  if (header.back() != "y") throw ParseError("last header column should be y", line_no);

  auto parse_pm1 = [&](std::string_view cell) {
    if (cell == "1" || cell == "+1") return 1;
    if (cell == "-1") return -1;
    throw ParseError("expected 1 or -1, got \"" + std::string(cell) + "\"", line_no);
  };

  std::vector<LabeledPoint> samples;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto cells = split_commas(row);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(cells.size()), line_no);
    }
    Mask x = 0;
    for (int j = 0; j < dim; ++j) {
      if (parse_pm1(cells[static_cast<std::size_t>(j)]) == -1) x |= Mask{1} << j;
    }
    samples.push_back({x, parse_pm1(cells.back())});
  }
  if (samples.empty()) throw ParseError("dataset has no samples");
  return {dim, std::move(samples)};
}

std::string distribution_to_json(const JointDistribution& dist) {
  Json table = Json::array();
  for (Mask x = 0; x < dist.num_points(); ++x) {
    for (int y : {1, -1}) {
      const double p = dist.prob(x, y);
      if (p == 0.0) continue;
      table.push_back(Json{{"x", x}, {"y", y}, {"p", number(p)}});
    }
  }
  return dump(Json{{"dim", dist.dim()}, {"table", std::move(table)}});
}

JointDistribution distribution_from_json(std::string_view text) {
  constexpr const char* what = "distribution";
  const Json j = parse_json(text, what);
  const int dim = field<int>(j, "dim", what);
  if (dim < 1 || dim > kMaxTableDim) {
    throw ParseError("distribution: dim must lie in [1, " + std::to_string(kMaxTableDim) + "]");
  }
  const Json entries = field<Json>(j, "table", what);
  if (!entries.is_array()) throw ParseError("distribution: \"table\" must be an array");
  std::vector<double> table(std::size_t{2} << dim, 0.0);
  std::set<std::size_t> seen;
  for (const auto& e : entries) {
    const Mask x = mask_field(e, "x", dim, what);
    const int y = field<int>(e, "y", what);
    if (y != 1 && y != -1) throw ParseError("distribution: y must be 1 or -1");
    const std::size_t index = table_index(x, y);
    if (!seen.insert(index).second) {
      throw ParseError("distribution: duplicate entry for x = " + std::to_string(x) +
                       ", y = " + std::to_string(y));
    }
    table[index] = field<double>(e, "p", what);
  }
  return {dim, std::move(table)};
}

std::string spectrum_to_json(const Spectrum& spectrum) {
  Json coeffs = Json::array();
  for (const auto& [s, v] : spectrum.coeffs()) {
    if (std::abs(v) < 1e-15) continue;
    coeffs.push_back(Json{{"s", s}, {"v", number(v)}});
  }
  return dump(Json{{"dim", spectrum.dim()}, {"coeffs", std::move(coeffs)}});
}

Spectrum spectrum_from_json(std::string_view text) {
  constexpr const char* what = "spectrum";
  const Json j = parse_json(text, what);
  const int dim = field<int>(j, "dim", what);
  if (dim < 1 || dim > kMaxPointDim) throw ParseError("spectrum: dim out of range");
  Spectrum s(dim);
  for (const auto& e : field<Json>(j, "coeffs", what)) {
    s.set(mask_field(e, "s", dim, what), field<double>(e, "v", what));
  }
  return s;
}

std::string model_to_json(const Predictor& predictor, const SubsetMask& subset) {
  Json terms = Json::array();
  for (const auto& [s, c] : predictor.poly().terms()) {
    terms.push_back(Json{{"s", s}, {"c", number(c)}});
  }
  return dump(Json{{"type", "sign-poly"},
                   {"dim", predictor.dim()},
                   {"subset", subset.bits()},
                   {"terms", std::move(terms)},
                   {"theta", number(predictor.theta())}});
}

Model model_from_json(std::string_view text) {
  constexpr const char* what = "model";
  const Json j = parse_json(text, what);
  if (field<std::string>(j, "type", what) != "sign-poly") {
    throw ParseError("model: unsupported type, expected \"sign-poly\"");
  }
  const int dim = field<int>(j, "dim", what);
  if (dim < 1 || dim > kMaxPointDim) throw ParseError("model: dim out of range");
  SparsePolynomial p(dim);
  for (const auto& t : field<Json>(j, "terms", what)) {
    const Mask s = mask_field(t, "s", dim, what);
    if (p.terms().contains(s)) throw ParseError("model: duplicate monomial " + std::to_string(s));
    p.set(s, field<double>(t, "c", what));
  }
  const SubsetMask subset(mask_field(j, "subset", dim, what), dim);
  return {Predictor(std::move(p), field<double>(j, "theta", what)), subset};
}

std::string report_to_json(const LearnReport& report, bool with_timing) {
  Json per_subset = Json::array();
  for (const auto& s : report.per_subset) {
    per_subset.push_back(Json{{"subset", s.subset.bits()},
                              {"zero_one", number(s.zero_one)},
                              {"square", number(s.square)}});
  }
  Json j{{"algorithm", report.algorithm},
         {"subset", report.subset.bits()},
         {"coordinates", report.subset.coordinates()},
         {"empirical_loss", number(report.empirical_loss)},
         {"empirical_square_loss", number(report.empirical_square_loss)},
         {"seconds", number(with_timing ? report.seconds : 0.0)},
         {"warnings", report.warnings},
         {"per_subset", std::move(per_subset)}};
  return dump(j);
}

std::string loss_report_to_json(const LossReport& loss) {
  return dump(Json{{"zero_one", number(loss.zero_one)},
                   {"square", number(loss.square)},
                   {"inner", number(loss.inner)}});
}

namespace {

Json check_json(const CheckResult& result) {
  Json j{{"check", result.check},
         {"trials", result.trials},
         {"violations", result.violations},
         {"max_gap", number(result.max_gap)},
         {"passed", result.passed()},
         {"seed", result.seed}};
  if (result.failing_trial) j["failing_trial"] = *result.failing_trial;
  if (result.allowed_violation_rate) {
    j["allowed_violation_rate"] = number(*result.allowed_violation_rate);
  }
  if (!result.note.empty()) j["note"] = result.note;
  return j;
}

}  // namespace

std::string check_result_to_json(const CheckResult& result) {
  return dump(check_json(result));
}

std::string check_results_to_json(std::span<const CheckResult> results) {
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(check_json(r));
  return dump(arr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw Error("error reading " + path);
  return s.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("error writing " + path);
}

}  // namespace junta
