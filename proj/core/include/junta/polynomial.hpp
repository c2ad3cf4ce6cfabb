#pragma once

#include <map>
#include <span>
#include <vector>

#include "junta/boolean_cube.hpp"

namespace junta {

/// sign with sign(0) := +1, the convention used by every predictor.
constexpr int sign_of(double v) noexcept {
#ifdef JUNTA_FAULT_SIGN_ZERO_NEGATIVE
  return v > 0.0 ? 1 : -1;
#else
  return v >= 0.0 ? 1 : -1;
#endif
}

/// p(x) = sum_S c_S chi_S(x) over a sparse set of monomials.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(int dim);

  int dim() const noexcept { return dim_; }
  const std::map<Mask, double>& terms() const noexcept { return terms_; }

  double coeff(Mask s) const;
  /// Sets c_S; stores explicit zeros as well.
  void set(Mask s, double c);
  void add(Mask s, double c) { set(s, coeff(s) + c); }

  /// Terms are summed in ascending mask order, so evaluation is reproducible.
  double evaluate(Mask x) const noexcept;
  double operator()(const CubePoint& x) const;

  /// max |S| over nonzero coefficients; 0 for the zero polynomial.
  int degree() const noexcept;
  /// Union of the masks of all nonzero terms.
  Mask support() const noexcept;

  /// Values at all 2^dim points (pointwise evaluation).
  std::vector<double> value_table() const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  int dim_;
  std::map<Mask, double> terms_;
};

/// g(x) = sign(p(x) - theta).
class Predictor {
 public:
  explicit Predictor(SparsePolynomial poly, double theta = 0.0);

  const SparsePolynomial& poly() const noexcept { return poly_; }
  double theta() const noexcept { return theta_; }
  int dim() const noexcept { return poly_.dim(); }

  int predict(Mask x) const noexcept { return sign_of(poly_.evaluate(x) - theta_); }
  int operator()(const CubePoint& x) const;

  /// Predictions at all 2^dim points.
  std::vector<int> prediction_table() const;

 private:
  SparsePolynomial poly_;
  double theta_;
};

/// Expands a function of the cells x^J (2^|J| values, local bit order) into
/// the monomials chi_S, S subset of J.
SparsePolynomial polynomial_from_cells(const SubsetMask& subset,
                                       std::span<const double> cell_values);

}  // namespace junta
