#include "junta/regression.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "junta/error.hpp"
#include "junta/fourier.hpp"

namespace junta {

namespace {

// Minimum-norm solution of G c = b for symmetric positive semidefinite G:
// eigenvalues below kPseudoInverseCutoff * lambda_max are treated as zero.
Eigen::VectorXd solve_psd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition of Gram matrix failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const double cutoff = kPseudoInverseCutoff * std::max(lambda.maxCoeff(), 0.0);
  Eigen::VectorXd projected = v.transpose() * rhs;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    projected[i] = lambda[i] > cutoff ? projected[i] / lambda[i] : 0.0;
  }
  return v * projected;
}

void check_dims(int a, int b, const char* what) {
  if (a != b) throw Error(std::string(what) + ": dimension mismatch");
}

}  // namespace

SparsePolynomial least_squares_fit(const Dataset& data, const SubsetMask& subset) {
  check_dims(data.dim(), subset.dim(), "least_squares_fit");
  const int k = subset.size();
  if (k > kMaxFitOrder) {
    throw Error("least_squares_fit: |J| = " + std::to_string(k) + " exceeds " +
                std::to_string(kMaxFitOrder));
  }
  const std::size_t cells = std::size_t{1} << k;
  const double n = static_cast<double>(data.size());

  // Per-cell weight w_z and label sum s_z. In local coordinates the Gram entry
  // of (S, T) is sum_z w_z chi_{S xor T}(z) and the moment of S is
  // sum_z s_z chi_S(z); both come from one transform each.
  std::vector<double> weight(cells, 0.0);
  std::vector<double> label_sum(cells, 0.0);
  for (const auto& s : data) {
    const Mask z = gather_bits(s.x, subset.bits());
    weight[z] += 1.0;
    label_sum[z] += s.y;
  }
  for (std::size_t z = 0; z < cells; ++z) {
    weight[z] /= n;
    label_sum[z] /= n;
  }
  walsh_hadamard(weight);
  walsh_hadamard(label_sum);

  const auto m = static_cast<Eigen::Index>(cells);
  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    rhs[a] = label_sum[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < m; ++b) {
      gram(a, b) = weight[static_cast<std::size_t>(a ^ b)];
    }
  }
  const Eigen::VectorXd c = solve_psd(gram, rhs);

  SparsePolynomial p(data.dim());
  for (Eigen::Index a = 0; a < m; ++a) {
    p.set(scatter_bits(static_cast<Mask>(a), subset.bits()), c[a]);
  }
  return p;
}

SparsePolynomial least_squares_fit(const Dataset& data,
                                   std::span<const SubsetMask> basis) {
  if (basis.empty()) throw Error("least_squares_fit: empty basis");
  if (basis.size() > kMaxBasisSize) {
    throw Error("least_squares_fit: basis of " + std::to_string(basis.size()) +
                " monomials exceeds " + std::to_string(kMaxBasisSize));
  }
  for (const auto& s : basis) check_dims(data.dim(), s.dim(), "least_squares_fit");

  // Aggregate repeated points before forming the Gram matrix.
  std::map<Mask, std::pair<double, double>> points;  // x -> (count, label sum)
  for (const auto& s : data) {
    auto& [count, ysum] = points[s.x];
    count += 1.0;
    ysum += s.y;
  }
  const auto m = static_cast<Eigen::Index>(basis.size());
  const double n = static_cast<double>(data.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd phi(m);
  for (const auto& [x, stats] : points) {
    for (Eigen::Index a = 0; a < m; ++a) {
      phi[a] = parity_sign(basis[static_cast<std::size_t>(a)].bits() & x);
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(phi, stats.first / n);
    rhs += (stats.second / n) * phi;
  }
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  const Eigen::VectorXd c = solve_psd(gram, rhs);

  SparsePolynomial p(data.dim());
  for (Eigen::Index a = 0; a < m; ++a) {
    p.add(basis[static_cast<std::size_t>(a)].bits(), c[a]);
  }
  return p;
}

double empirical_square_loss(const Dataset& data, const SparsePolynomial& p) {
  check_dims(data.dim(), p.dim(), "empirical_square_loss");
  double sum = 0.0;
  for (const auto& s : data) {
    const double r = s.y - p.evaluate(s.x);
    sum += r * r;
  }
  return sum / static_cast<double>(data.size());
}

CellTable conditional_means(const JointDistribution& dist, const SubsetMask& subset) {
  check_dims(dist.dim(), subset.dim(), "conditional_means");
  const std::size_t cells = std::size_t{1} << subset.size();
  CellTable t{subset, std::vector<double>(cells, 0.0), std::vector<double>(cells, 0.0)};
  std::vector<double> correlation(cells, 0.0);
  for (Mask x = 0; x < dist.num_points(); ++x) {
    const Mask z = gather_bits(x, subset.bits());
    t.mass[z] += dist.marginal(x);
    correlation[z] += dist.label_correlation(x);
  }
  for (std::size_t z = 0; z < cells; ++z) {
    t.mean[z] = t.mass[z] > 0.0 ? correlation[z] / t.mass[z] : 0.0;
  }
  return t;
}

SparsePolynomial mmse_projection_exact(const JointDistribution& dist,
                                       const SubsetMask& subset) {
  if (subset.size() > kMaxTableDim) throw Error("mmse_projection_exact: subset too large");
  const CellTable t = conditional_means(dist, subset);
  return polynomial_from_cells(subset, t.mean);
}

double u_poly(double x) {
  if (!(x >= 0.0)) throw Error("u_poly is defined for x >= 0");
  return ((x + 1.5) * x + 1.5) * x;
}

namespace {

// a_S for S subset of J from the cell sums of the label correlation:
// a_S = 2^-d sum_z corr(z) chi_S(z).
SparsePolynomial projection_from_cell_correlation(const SubsetMask& subset,
                                                  std::vector<double> correlation) {
  walsh_hadamard(correlation);
  SparsePolynomial p(subset.dim());
  for (Mask local = 0; local < correlation.size(); ++local) {
    p.set(scatter_bits(local, subset.bits()), std::ldexp(correlation[local], -subset.dim()));
  }
  return p;
}

}  // namespace

SparsePolynomial fourier_projection(const JointDistribution& dist,
                                    const SubsetMask& subset) {
  check_dims(dist.dim(), subset.dim(), "fourier_projection");
  std::vector<double> correlation(std::size_t{1} << subset.size(), 0.0);
  for (Mask x = 0; x < dist.num_points(); ++x) {
    correlation[gather_bits(x, subset.bits())] += dist.label_correlation(x);
  }
  return projection_from_cell_correlation(subset, std::move(correlation));
}

SparsePolynomial fourier_projection(const Dataset& data, const SubsetMask& subset) {
  check_dims(data.dim(), subset.dim(), "fourier_projection");
  if (subset.size() > kMaxTableDim) throw Error("fourier_projection: subset too large");
  std::vector<double> correlation(std::size_t{1} << subset.size(), 0.0);
  for (const auto& s : data) correlation[gather_bits(s.x, subset.bits())] += s.y;
  for (double& c : correlation) c /= static_cast<double>(data.size());
  return projection_from_cell_correlation(subset, std::move(correlation));
}

}  // namespace junta
