#include "planted.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "junta/boolean_cube.hpp"
#include "junta/error.hpp"

namespace junta::cli {

namespace {

int parse_int(std::string_view text, const std::string& context) {
  int v = 0;
  const auto* end = text.data() + text.size();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error("invalid integer \"" + std::string(text) + "\" in " + context);
  }
  return v;
}

double parse_real(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error("invalid number \"" + text + "\" in " + context);
  }
  return v;
}

}  // namespace

std::vector<int> parse_coordinate_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "coordinate list"));
  return out;
}

std::vector<int> named_truth_table(const std::string& name, int k, CounterRng& rng) {
  const std::size_t cells = std::size_t{1} << k;
  std::vector<int> t(cells);
  for (Mask z = 0; z < cells; ++z) {
    const int minus = std::popcount(z);
    if (name == "parity") {
      t[z] = parity_sign(z);
    } else if (name == "majority") {
      t[z] = 2 * minus > k ? -1 : 1;
    } else if (name == "and") {
      t[z] = minus == k ? -1 : 1;
    } else if (name == "or") {
      t[z] = minus > 0 ? -1 : 1;
    } else if (name == "dictator") {
      t[z] = z & 1 ? -1 : 1;
    } else if (name == "random") {
      t[z] = rng.coin(0.5) ? -1 : 1;
    } else {
      t.clear();
      break;
    }
  }
  if (!t.empty()) return t;

  std::stringstream ss(name);
  std::string item;
  while (std::getline(ss, item, ',')) t.push_back(parse_int(item, "truth table"));
  if (t.size() != cells || std::any_of(t.begin(), t.end(), [](int v) {
        return v != 1 && v != -1;
      })) {
    throw Error("truth table \"" + name +
                "\" is neither a known name nor a list of " + std::to_string(cells) +
                " values +-1");
  }
  return t;
}

std::vector<double> named_marginal(const std::string& name, int dim, CounterRng& rng) {
  if (name == "uniform") return uniform_marginal(dim);
  if (name.rfind("product:", 0) == 0) {
    return product_marginal(dim, parse_real(name.substr(8), "product marginal"));
  }
  if (name == "random") {
    std::vector<double> m(std::size_t{1} << dim);
    double total = 0.0;
    for (double& p : m) total += p = -std::log1p(-rng.uniform());
    for (double& p : m) p /= total;
    return m;
  }
  throw Error("unknown marginal \"" + name + "\" (uniform, product:<p>, random)");
}

JointDistribution build_planted(const PlantedSpec& spec, RngSeed seed) {
  require_dim(spec.dim, kMaxTableDim);
  const SubsetMask junta = SubsetMask::from_coordinates(spec.dim, spec.junta);
  if (static_cast<std::size_t>(junta.size()) != spec.junta.size()) {
    throw Error("junta coordinates must be distinct");
  }
  CounterRng rng(seed);
  const std::vector<int> table = named_truth_table(spec.table, junta.size(), rng);
  const std::vector<double> marginal = named_marginal(spec.marginal, spec.dim, rng);
  return planted_junta_distribution(junta, table, marginal, spec.eta);
}

JointDistribution uniform_label_distribution(int dim) {
  require_dim(dim, kMaxTableDim);
  const std::size_t entries = std::size_t{2} << dim;
  return {dim, std::vector<double>(entries, 1.0 / static_cast<double>(entries))};
}

}  // namespace junta::cli
