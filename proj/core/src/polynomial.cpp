#include "junta/polynomial.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "junta/error.hpp"
#include "junta/fourier.hpp"

namespace junta {

SparsePolynomial::SparsePolynomial(int dim) : dim_(dim) { require_dim(dim); }

double SparsePolynomial::coeff(Mask s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

void SparsePolynomial::set(Mask s, double c) {
  if ((s & ~full_mask(dim_)) != 0) {
    throw Error("monomial mask beyond dimension " + std::to_string(dim_));
  }
  if (!std::isfinite(c)) throw Error("polynomial coefficients must be finite");
  terms_[s] = c;
}

double SparsePolynomial::evaluate(Mask x) const noexcept {
  double sum = 0.0;
  for (const auto& [s, c] : terms_) sum += parity_sign(s & x) * c;
  return sum;
}

double SparsePolynomial::operator()(const CubePoint& x) const {
  if (x.dim() != dim_) throw Error("polynomial evaluated at point of wrong dimension");
  return evaluate(x.bits());
}

int SparsePolynomial::degree() const noexcept {
  int deg = 0;
  for (const auto& [s, c] : terms_) {
    if (c != 0.0) deg = std::max(deg, std::popcount(s));
  }
  return deg;
}

Mask SparsePolynomial::support() const noexcept {
  Mask m = 0;
  for (const auto& [s, c] : terms_) {
    if (c != 0.0) m |= s;
  }
  return m;
}

std::vector<double> SparsePolynomial::value_table() const {
  std::vector<double> out(std::size_t{1} << dim_);
  for (Mask x = 0; x < out.size(); ++x) out[x] = evaluate(x);
  return out;
}

Predictor::Predictor(SparsePolynomial poly, double theta)
    : poly_(std::move(poly)), theta_(theta) {
  if (!std::isfinite(theta)) throw Error("threshold must be finite");
}

int Predictor::operator()(const CubePoint& x) const {
  if (x.dim() != dim()) throw Error("predictor evaluated at point of wrong dimension");
  return predict(x.bits());
}

std::vector<int> Predictor::prediction_table() const {
  std::vector<int> out(std::size_t{1} << dim());
  for (Mask x = 0; x < out.size(); ++x) out[x] = predict(x);
  return out;
}

SparsePolynomial polynomial_from_cells(const SubsetMask& subset,
                                       std::span<const double> cell_values) {
  const int k = subset.size();
  if (cell_values.size() != (std::size_t{1} << k)) {
    throw Error("cell table needs 2^|J| entries");
  }
  std::vector<double> coeffs(cell_values.begin(), cell_values.end());
  walsh_hadamard(coeffs);
  SparsePolynomial p(subset.dim());
  for (Mask local = 0; local < coeffs.size(); ++local) {
    p.set(scatter_bits(local, subset.bits()), std::ldexp(coeffs[local], -k));
  }
  return p;
}

}  // namespace junta
