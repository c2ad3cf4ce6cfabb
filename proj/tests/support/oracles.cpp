#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <limits>

#include <unistd.h>

namespace oracle {

int coord(Mask x, int j) { return ((x >> j) & 1U) ? -1 : 1; }

int chi(Mask s, Mask x, int dim) {
  int v = 1;
  for (int j = 0; j < dim; ++j) {
    if ((s >> j) & 1U) v *= coord(x, j);
  }
  return v;
}

std::vector<double> fourier(const std::vector<double>& f) {
  int d = 0;
  while ((std::size_t{1} << d) < f.size()) ++d;
  std::vector<double> out(f.size(), 0.0);
  for (Mask s = 0; s < f.size(); ++s) {
    double sum = 0.0;
    for (Mask x = 0; x < f.size(); ++x) sum += f[x] * chi(s, x, d);
    out[s] = sum / static_cast<double>(f.size());
  }
  return out;
}

double stochastic_coeff(const junta::JointDistribution& dist, Mask s) {
  double sum = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    sum += (dist.prob(x, 1) - dist.prob(x, -1)) * chi(s, x, dist.dim());
  }
  return sum / static_cast<double>(dist.num_points());
}

double loss(const junta::JointDistribution& dist, const std::function<int(Mask)>& g) {
  double sum = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) sum += dist.prob(x, -g(x));
  return sum;
}

DenseFit least_squares(const junta::Dataset& data, const std::vector<Mask>& basis) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(n, m);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = data[static_cast<std::size_t>(i)];
    y[i] = s.y;
    for (Eigen::Index c = 0; c < m; ++c) {
      a(i, c) = chi(basis[static_cast<std::size_t>(c)], s.x, data.dim());
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd c = cod.solve(y);
  const Eigen::VectorXd fitted = a * c;
  DenseFit out;
  out.coeffs.assign(c.data(), c.data() + c.size());
  out.fitted.assign(fitted.data(), fitted.data() + fitted.size());
  out.square_loss = (y - fitted).squaredNorm() / static_cast<double>(n);
  return out;
}

std::vector<Mask> masks_of_size(int dim, int k) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << dim); ++s) {
    int bits = 0;
    for (int j = 0; j < dim; ++j) bits += (s >> j) & 1U;
    if (bits == k) out.push_back(s);
  }
  return out;
}

namespace {

// Index of x's cell among the 2^|J| restrictions to J, lowest coordinate
// first.
std::size_t cell_of(Mask x, Mask subset, int dim) {
  std::size_t cell = 0;
  int pos = 0;
  for (int j = 0; j < dim; ++j) {
    if ((subset >> j) & 1U) {
      if ((x >> j) & 1U) cell |= std::size_t{1} << pos;
      ++pos;
    }
  }
  return cell;
}

}  // namespace

double junta_opt(const junta::JointDistribution& dist, int k) {
  const int d = dist.dim();
  double best = std::numeric_limits<double>::infinity();
  for (Mask subset : masks_of_size(d, k)) {
    for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1U << k)); ++table) {
      best = std::min(best, loss(dist, [&](Mask x) {
                        return ((table >> cell_of(x, subset, d)) & 1U) ? -1 : 1;
                      }));
    }
  }
  return best;
}

double all_predictors_opt(const junta::JointDistribution& dist) {
  return junta_opt(dist, dist.dim());
}

std::size_t junta_erm_mistakes(const junta::Dataset& data, int k) {
  const int d = data.dim();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Mask subset : masks_of_size(d, k)) {
    for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1U << k)); ++table) {
      std::size_t mistakes = 0;
      for (const auto& s : data) {
        const int g = ((table >> cell_of(s.x, subset, d)) & 1U) ? -1 : 1;
        mistakes += g != s.y;
      }
      best = std::min(best, mistakes);
    }
  }
  return best;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("junta_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
