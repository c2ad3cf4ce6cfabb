#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "junta/error.hpp"
#include "junta/io.hpp"
#include "junta/random_instances.hpp"
#include "oracles.hpp"

namespace junta {
namespace {

Dataset parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_dataset_csv(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_csv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_THROW(format_double(NAN), Error);
  CounterRng rng({70, 0});
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.below(80)) - 40);
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(DatasetCsv, WritesSignColumns) {
  const Dataset data(3, {{0b001, 1}, {0b110, -1}});
  std::ostringstream out;
  write_dataset_csv(out, data);
  EXPECT_EQ(out.str(), "x1,x2,x3,y\n-1,1,1,1\n1,-1,-1,-1\n");
}

TEST(DatasetCsv, RoundTrips) {
  CounterRng rng({71, 0});
  const Dataset data = Sampler(random_distribution(7, rng)).draw(200, rng);
  std::ostringstream out;
  write_dataset_csv(out, data);
  EXPECT_EQ(parse_csv(out.str()), data);
}

TEST(DatasetCsv, AcceptsPlusSignsCrlfAndBlankLines) {
  const Dataset data = parse_csv("x1,x2,y\r\n+1,-1,1\r\n\r\n-1,1,-1\r\n");
  EXPECT_EQ(data, Dataset(2, {{0b10, 1}, {0b01, -1}}));
}

TEST(DatasetCsv, ReportsOffendingLine) {
  EXPECT_EQ(parse_error_line("x1,x2,y\n1,1,1\n1,0,1\n"), 3U);
  EXPECT_EQ(parse_error_line("x1,x2,y\n1,1,1\n1,1,1\n1,1\n"), 4U);
  EXPECT_EQ(parse_error_line("x1,x3,y\n1,1,1\n"), 1U);
  EXPECT_EQ(parse_error_line("x1,x2,label\n"), 1U);
  EXPECT_EQ(parse_error_line(""), 1U);
  EXPECT_THROW(parse_csv("x1,y\n"), ParseError);
}

TEST(DistributionJson, RoundTripsExactly) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({72, t});
    const JointDistribution dist = random_distribution(1 + static_cast<int>(rng.below(8)), rng);
    EXPECT_EQ(distribution_from_json(distribution_to_json(dist)), dist);
  }
}

TEST(DistributionJson, OmitsZeroEntries) {
  const JointDistribution pm = JointDistribution::point_mass(CubePoint(2, 2), -1);
  EXPECT_EQ(distribution_to_json(pm),
            "{\n  \"dim\": 2,\n  \"table\": [\n    {\n      \"x\": 2,\n      \"y\": -1,\n"
            "      \"p\": 1\n    }\n  ]\n}\n");
}

TEST(DistributionJson, RejectsMalformedInput) {
  EXPECT_THROW(distribution_from_json("{"), ParseError);
  EXPECT_THROW(distribution_from_json(R"({"dim": 1})"), ParseError);
  EXPECT_THROW(distribution_from_json(R"({"dim": 1, "table": [{"x": 2, "y": 1, "p": 1}]})"),
               ParseError);
  EXPECT_THROW(distribution_from_json(R"({"dim": 1, "table": [{"x": 0, "y": 0, "p": 1}]})"),
               ParseError);
  EXPECT_THROW(distribution_from_json(
                   R"({"dim": 1, "table": [{"x": 0, "y": 1, "p": 0.5}, {"x": 0, "y": 1, "p": 0.5}]})"),
               ParseError);
  EXPECT_THROW(distribution_from_json(R"({"dim": 1, "table": [{"x": 0, "y": 1, "p": 0.5}]})"),
               Error);
}

TEST(SpectrumJson, RoundTripsAndDropsTinyValues) {
  Spectrum s(4);
  s.set(0, 0.25);
  s.set(3, -1e-3);
  s.set(5, 1e-17);
  const Spectrum back = spectrum_from_json(spectrum_to_json(s));
  EXPECT_EQ(back[0], 0.25);
  EXPECT_EQ(back[3], -1e-3);
  EXPECT_EQ(back.coeffs().count(5), 0U);
}

TEST(ModelJson, RoundTripsPredictions) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng({73, t});
    const int d = 1 + static_cast<int>(rng.below(8));
    const Predictor g = random_predictor(d, rng);
    const SubsetMask subset(g.poly().support(), d);
    const Model m = model_from_json(model_to_json(g, subset));
    EXPECT_EQ(m.predictor.poly(), g.poly());
    EXPECT_EQ(m.predictor.theta(), g.theta());
    EXPECT_EQ(m.subset, subset);
  }
}

TEST(ModelJson, RejectsBadModels) {
  EXPECT_THROW(model_from_json(R"({"type": "tree", "dim": 2, "subset": 0, "terms": [], "theta": 0})"),
               ParseError);
  EXPECT_THROW(model_from_json(
                   R"({"type": "sign-poly", "dim": 2, "subset": 0, "terms": [{"s": 1, "c": 1}, {"s": 1, "c": 2}], "theta": 0})"),
               ParseError);
  EXPECT_THROW(model_from_json(
                   R"({"type": "sign-poly", "dim": 2, "subset": 4, "terms": [], "theta": 0})"),
               ParseError);
}

TEST(ReportJson, TimingIsZeroUnlessRequested) {
  LearnReport r;
  r.algorithm = "l2";
  r.subset = SubsetMask(0b101, 3);
  r.empirical_loss = 0.125;
  r.seconds = 1.5;
  const std::string plain = report_to_json(r, false);
  EXPECT_NE(plain.find("\"seconds\": 0,"), std::string::npos);
  EXPECT_NE(plain.find("\"coordinates\": [\n    1,\n    3\n  ]"), std::string::npos);
  EXPECT_NE(report_to_json(r, true).find("\"seconds\": 1.5,"), std::string::npos);
}

TEST(CheckJson, IncludesOptionalFieldsOnlyWhenSet) {
  CheckResult r;
  r.check = "eq1";
  r.trials = 10;
  const std::string plain = check_result_to_json(r);
  EXPECT_EQ(plain.find("failing_trial"), std::string::npos);
  EXPECT_NE(plain.find("\"passed\": true"), std::string::npos);
  r.violations = 1;
  r.failing_trial = 4;
  const std::string failing = check_result_to_json(r);
  EXPECT_NE(failing.find("\"failing_trial\": 4"), std::string::npos);
  EXPECT_NE(failing.find("\"passed\": false"), std::string::npos);
  const std::vector<CheckResult> both{r, r};
  EXPECT_EQ(check_results_to_json(both).front(), '[');
}

TEST(Files, WriteThenRead) {
  const auto dir = oracle::scratch_dir("io");
  const std::string path = (dir / "f.txt").string();
  write_file(path, "abc\n");
  EXPECT_EQ(read_file(path), "abc\n");
  EXPECT_THROW(read_file((dir / "missing").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace junta
