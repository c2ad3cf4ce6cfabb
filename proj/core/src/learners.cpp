#include "junta/learners.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <string>
#include <tuple>

#include "junta/error.hpp"
#include "junta/fourier.hpp"
#include "junta/oracle.hpp"
#include "junta/regression.hpp"

namespace junta {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_order(const Dataset& data, int k, const char* what) {
  if (k < 0 || k > data.dim()) {
    throw Error(std::string(what) + ": k = " + std::to_string(k) + " must lie in [0, " +
                std::to_string(data.dim()) + "]");
  }
}

// Label counts of the 2^|J| cells x^J = z.
struct CellCounts {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
};

CellCounts count_cells(const Dataset& data, Mask subset) {
  const std::size_t cells = std::size_t{1} << std::popcount(subset);
  CellCounts c{std::vector<std::size_t>(cells, 0), std::vector<std::size_t>(cells, 0)};
  for (const auto& s : data) {
    const Mask z = gather_bits(s.x, subset);
    if (s.y == 1) {
      ++c.plus[z];
    } else {
      ++c.minus[z];
    }
  }
  return c;
}

struct CellLoss {
  std::size_t mistakes = 0;
  double square = 0.0;
};

// Losses of sign[p] and p when p only involves coordinates of `subset`: p is
// then constant on each cell, so one evaluation per cell suffices and gives
// the same value as evaluating at every sample.
CellLoss cell_loss(const CellCounts& counts, Mask subset, const SparsePolynomial& p,
                   std::size_t n) {
  CellLoss out;
  for (Mask z = 0; z < counts.plus.size(); ++z) {
    const auto plus = counts.plus[z];
    const auto minus = counts.minus[z];
    if (plus + minus == 0) continue;
    const double v = p.evaluate(scatter_bits(z, subset));
    out.mistakes += sign_of(v) == 1 ? minus : plus;
    out.square += static_cast<double>(plus) * (1.0 - v) * (1.0 - v) +
                  static_cast<double>(minus) * (1.0 + v) * (1.0 + v);
  }
  out.square /= static_cast<double>(n);
  return out;
}

LearnResult finish(Algorithm alg, const Dataset& data, Predictor predictor,
                   const SubsetMask& subset, double square_loss,
                   std::vector<SubsetScore> per_subset, std::vector<std::string> warnings,
                   Clock::time_point start) {
  LearnReport report;
  report.algorithm = std::string(to_string(alg));
  report.subset = subset;
  report.empirical_loss = empirical_loss(data, predictor).zero_one;
  report.empirical_square_loss = square_loss;
  report.per_subset = std::move(per_subset);
  report.warnings = std::move(warnings);
  report.seconds = elapsed(start);
  return {std::move(predictor), std::move(report)};
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::l2: return "l2";
    case Algorithm::fourier: return "fourier";
    case Algorithm::erm: return "erm";
    case Algorithm::threshold: return "threshold";
    case Algorithm::mmse_sign: return "mmse-sign";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {Algorithm::l2, Algorithm::fourier, Algorithm::erm, Algorithm::threshold,
                 Algorithm::mmse_sign}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

LearnResult l2_algorithm(const Dataset& data, int k, SubsetSelection selection) {
  const auto start = Clock::now();
  check_order(data, k, "l2_algorithm");
  const std::size_t n = data.size();

  std::vector<SubsetScore> scores;
  std::optional<SparsePolynomial> best_poly;
  SubsetMask best_subset = SubsetMask::empty(data.dim());
  CellLoss best_loss;
  for (const auto& subset : enumerate_subsets(data.dim(), k, SubsetRange::exactly_k)) {
    SparsePolynomial p = least_squares_fit(data, subset);
    const CellLoss loss = cell_loss(count_cells(data, subset.bits()), subset.bits(), p, n);
    scores.push_back({subset, static_cast<double>(loss.mistakes) / static_cast<double>(n),
                      loss.square});
    // Subsets arrive in ascending mask order, so strict improvement keeps the
    // smallest mask among ties.
    bool better = !best_poly.has_value();
    if (!better) {
      if (selection == SubsetSelection::square_loss) {
        better = loss.square < best_loss.square;
      } else {
        better = std::tie(loss.mistakes, loss.square) <
                 std::tie(best_loss.mistakes, best_loss.square);
      }
    }
    if (better) {
      best_poly = std::move(p);
      best_subset = subset;
      best_loss = loss;
    }
  }
  const double square = empirical_square_loss(data, *best_poly);
  return finish(Algorithm::l2, data, Predictor(std::move(*best_poly)), best_subset, square,
                std::move(scores), {}, start);
}

LearnResult stochastic_fourier(const Dataset& data, int k) {
  const auto start = Clock::now();
  check_order(data, k, "stochastic_fourier");
  const int d = data.dim();
  const std::size_t n = data.size();

  // â_S for |S| <= k. The label sums are integers, so the transform route is
  // exact and agrees bit for bit with empirical_coeff.
  const auto low = enumerate_subsets(d, k, SubsetRange::up_to_k);
  std::vector<double> coeff_of;  // indexed by mask when the dense route is used
  std::vector<double> low_coeffs;
  if (d <= kMaxTableDim) {
    coeff_of.assign(std::size_t{1} << d, 0.0);
    for (const auto& s : data) coeff_of[s.x] += s.y;
    walsh_hadamard(coeff_of);
    for (double& v : coeff_of) v = std::ldexp(v / static_cast<double>(n), -d);
  } else {
    low_coeffs = empirical_coeffs(data, low);
  }
  auto lookup = [&](Mask s) {
    if (!coeff_of.empty()) return coeff_of[s];
    const auto it = std::lower_bound(low.begin(), low.end(), SubsetMask(s, d));
    return low_coeffs[static_cast<std::size_t>(it - low.begin())];
  };

  std::vector<SubsetScore> scores;
  std::optional<SparsePolynomial> best_poly;
  SubsetMask best_subset = SubsetMask::empty(d);
  std::size_t best_mistakes = 0;
  for (const auto& subset : enumerate_subsets(d, k, SubsetRange::exactly_k)) {
    SparsePolynomial f(d);
    const std::size_t cells = std::size_t{1} << subset.size();
    for (Mask local = 0; local < cells; ++local) {
      const Mask s = scatter_bits(local, subset.bits());
      f.set(s, lookup(s));
    }
    const CellLoss loss = cell_loss(count_cells(data, subset.bits()), subset.bits(), f, n);
    scores.push_back({subset, static_cast<double>(loss.mistakes) / static_cast<double>(n),
                      loss.square});
    if (!best_poly || loss.mistakes < best_mistakes) {
      best_poly = std::move(f);
      best_subset = subset;
      best_mistakes = loss.mistakes;
    }
  }
  const double square = empirical_square_loss(data, *best_poly);
  return finish(Algorithm::fourier, data, Predictor(std::move(*best_poly)), best_subset,
                square, std::move(scores), {}, start);
}

LearnResult l2_threshold(const Dataset& data, int k) {
  const auto start = Clock::now();
  check_order(data, k, "l2_threshold");
  const int d = data.dim();
  const std::size_t n = data.size();

  const auto basis = enumerate_subsets(d, k, SubsetRange::up_to_k);
  std::vector<std::string> warnings;
  if (basis.size() > n) {
    warnings.push_back("degree-" + std::to_string(k) + " design has " +
                       std::to_string(basis.size()) + " monomials but only " +
                       std::to_string(n) +
                       " samples; the minimum-norm solution is returned");
  }
  SparsePolynomial p = least_squares_fit(data, basis);

  // Samples sorted by fitted value, with prefix counts of each label.
  std::vector<std::pair<double, int>> fitted;
  fitted.reserve(n);
  for (const auto& s : data) fitted.emplace_back(p.evaluate(s.x), s.y);
  std::sort(fitted.begin(), fitted.end());
  std::vector<std::size_t> plus_below(n + 1, 0);
  std::vector<std::size_t> minus_below(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    plus_below[i + 1] = plus_below[i] + (fitted[i].second == 1 ? 1 : 0);
    minus_below[i + 1] = minus_below[i] + (fitted[i].second == 1 ? 0 : 1);
  }
  // sign(v - theta) = +1 exactly when v >= theta.
  auto mistakes_at = [&](double theta) {
    const auto first_up = static_cast<std::size_t>(
        std::lower_bound(fitted.begin(), fitted.end(), std::make_pair(theta, -2)) -
        fitted.begin());
    return plus_below[first_up] + (minus_below[n] - minus_below[first_up]);
  };

  // The loss only changes where theta crosses a fitted value, so the
  // endpoints and the midpoints between consecutive clipped values cover
  // every attainable loss in [-1, 1].
  std::vector<double> clipped;
  clipped.reserve(n);
  for (const auto& [v, y] : fitted) clipped.push_back(std::clamp(v, -1.0, 1.0));
  clipped.erase(std::unique(clipped.begin(), clipped.end()), clipped.end());
  std::vector<double> candidates{-1.0};
  for (std::size_t i = 0; i + 1 < clipped.size(); ++i) {
    candidates.push_back(clipped[i] + 0.5 * (clipped[i + 1] - clipped[i]));
  }
  candidates.push_back(1.0);

  double best_theta = candidates.front();
  std::size_t best = mistakes_at(best_theta);
  for (double theta : candidates) {
    const std::size_t m = mistakes_at(theta);
    if (m < best || (m == best && theta < best_theta)) {
      best = m;
      best_theta = theta;
    }
  }

  const double square = empirical_square_loss(data, p);
  const SubsetMask support(p.support(), d);
  return finish(Algorithm::threshold, data, Predictor(std::move(p), best_theta), support,
                square, {}, std::move(warnings), start);
}

LearnResult erm_bruteforce(const Dataset& data, int k) {
  const auto start = Clock::now();
  check_order(data, k, "erm_bruteforce");
  const int d = data.dim();
  if (k > kMaxErmOrder || d > kMaxErmDim) {
    throw Error("erm_bruteforce supports k <= " + std::to_string(kMaxErmOrder) +
                " and d <= " + std::to_string(kMaxErmDim) + ", got k = " +
                std::to_string(k) + ", d = " + std::to_string(d));
  }
  const std::size_t n = data.size();
  const std::size_t cells = std::size_t{1} << k;
  const std::uint64_t tables = std::uint64_t{1} << cells;

  std::vector<SubsetScore> scores;
  SubsetMask best_subset = SubsetMask::empty(d);
  std::uint64_t best_table = 0;
  std::size_t best_mistakes = n + 1;
  for (const auto& subset : enumerate_subsets(d, k, SubsetRange::exactly_k)) {
    const CellCounts counts = count_cells(data, subset.bits());
    // Truth table bit z set means the junta outputs -1 on cell z. Tables are
    // visited in Gray-code order so each step flips one cell.
    long long mistakes = 0;
    for (std::size_t z = 0; z < cells; ++z) mistakes += static_cast<long long>(counts.minus[z]);
    std::uint64_t table = 0;
    long long local_best = mistakes;
    std::uint64_t local_table = 0;
    for (std::uint64_t i = 1; i < tables; ++i) {
      const int z = std::countr_zero(i);
      table ^= std::uint64_t{1} << z;
      const auto delta = static_cast<long long>(counts.plus[z]) -
                         static_cast<long long>(counts.minus[z]);
      mistakes += (table >> z) & 1 ? delta : -delta;
      if (mistakes < local_best || (mistakes == local_best && table < local_table)) {
        local_best = mistakes;
        local_table = table;
      }
    }
    const auto m = static_cast<std::size_t>(local_best);
    scores.push_back({subset, static_cast<double>(m) / static_cast<double>(n), 4.0 *
                      static_cast<double>(m) / static_cast<double>(n)});
    if (m < best_mistakes) {
      best_mistakes = m;
      best_subset = subset;
      best_table = local_table;
    }
  }

  std::vector<double> values(cells);
  for (std::size_t z = 0; z < cells; ++z) values[z] = (best_table >> z) & 1 ? -1.0 : 1.0;
  SparsePolynomial p = polynomial_from_cells(best_subset, values);
  const double square = empirical_square_loss(data, p);
  return finish(Algorithm::erm, data, Predictor(std::move(p)), best_subset, square,
                std::move(scores), {}, start);
}

LearnResult sign_mmse(const Dataset& data) {
  const auto start = Clock::now();
  const int d = data.dim();
  require_dim(d, kMaxTableDim);
  const std::size_t points = std::size_t{1} << d;
  std::vector<long long> label_sum(points, 0);
  std::vector<std::size_t> count(points, 0);
  for (const auto& s : data) {
    label_sum[s.x] += s.y;
    ++count[s.x];
  }
  // The stored polynomial expands the sign table rather than the mean table:
  // its values are exactly +-1, so unseen points (mean 0) predict +1 instead
  // of the sign of roundoff noise.
  std::vector<double> signs(points);
  double square = 0.0;
  for (Mask x = 0; x < points; ++x) {
    const double mean =
        count[x] ? static_cast<double>(label_sum[x]) / static_cast<double>(count[x]) : 0.0;
    signs[x] = sign_of(mean);
    // sum over samples at x of (y - mean)^2 = count - label_sum * mean
    square += static_cast<double>(count[x]) - static_cast<double>(label_sum[x]) * mean;
  }
  square /= static_cast<double>(data.size());
  SparsePolynomial p = polynomial_from_cells(SubsetMask::all(d), signs);
  return finish(Algorithm::mmse_sign, data, Predictor(std::move(p)), SubsetMask::all(d),
                square, {}, {}, start);
}

LearnResult learn(Algorithm algorithm, const Dataset& data, int k) {
  switch (algorithm) {
    case Algorithm::l2: return l2_algorithm(data, k);
    case Algorithm::fourier: return stochastic_fourier(data, k);
    case Algorithm::erm: return erm_bruteforce(data, k);
    case Algorithm::threshold: return l2_threshold(data, k);
    case Algorithm::mmse_sign: return sign_mmse(data);
  }
  throw Error("unknown algorithm");
}

}  // namespace junta
