#pragma once

// Uniform Boolean Fourier transform and the stochastic / empirical Fourier
// coefficients of a label.
//
// Coefficients keep the 2^-d factor of their definitions:
//   f_S   = 2^-d sum_x f(x) chi_S(x)
//   a_S   = 2^-d E[Y chi_S(X)]
//   â_S   = 2^-d (1/n) sum_i y_i chi_S(x_i)
// `correlation_from_coeff` undoes the scaling where an identity needs it.

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"

namespace junta {

/// In-place unnormalized Walsh-Hadamard transform:
/// out[S] = sum_x in[x] chi_S(x). Length must be a power of two.
void walsh_hadamard(std::span<double> values);

/// Sparse map S -> coefficient; absent masks mean 0.
class Spectrum {
 public:
  explicit Spectrum(int dim);

  /// Takes every entry of a dense 2^d coefficient vector (zeros included).
  static Spectrum from_dense(std::span<const double> coeffs);

  int dim() const noexcept { return dim_; }
  double operator[](Mask s) const;
  void set(Mask s, double value);
  const std::map<Mask, double>& coeffs() const noexcept { return coeffs_; }
  std::vector<double> dense() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  int dim_;
  std::map<Mask, double> coeffs_;
};

/// Fourier coefficients of a table of 2^d values, via the fast transform.
std::vector<double> uniform_fourier_dense(std::span<const double> f);
Spectrum uniform_fourier(std::span<const double> f);

/// f(x) = sum_S f_S chi_S(x) for all x.
std::vector<double> inverse_fourier(const Spectrum& s);

/// a_S = 2^-d E_D[Y chi_S(X)], exact over the table.
double stochastic_coeff(const JointDistribution& dist, const SubsetMask& s);

/// a_S for every S, indexed by mask.
std::vector<double> stochastic_spectrum(const JointDistribution& dist);

/// â_S = 2^-d (1/n) sum_i y_i chi_S(x_i).
double empirical_coeff(const Dataset& data, const SubsetMask& s);
std::vector<double> empirical_coeffs(const Dataset& data,
                                     std::span<const SubsetMask> subsets);

/// 2^d * coefficient: E[Y chi_S] for a_S, the uniform average for f_S.
inline double correlation_from_coeff(double coeff, int dim) {
  return std::ldexp(coeff, dim);
}

/// Deviation bound on sup_j |â_{S_j} - a_{S_j}| over m subsets holding with
/// probability 1 - delta: 2^-d sqrt(log(2m/delta) / (2n)).
double concentration_bound(std::size_t n, std::size_t m, double delta, int dim);

}  // namespace junta
