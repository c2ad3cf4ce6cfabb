#include "junta/fourier.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "junta/error.hpp"

namespace junta {

namespace {

int dim_of_length(std::size_t length) {
  if (length < 2 || !std::has_single_bit(length)) {
    throw Error("Fourier table length must be 2^d with d >= 1, got " +
                std::to_string(length));
  }
  const int d = std::countr_zero(length);
  require_dim(d);
  return d;
}

}  // namespace

void walsh_hadamard(std::span<double> values) {
  const std::size_t n = values.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error("Walsh-Hadamard length must be a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = values[i];
        const double b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

Spectrum::Spectrum(int dim) : dim_(dim) { require_dim(dim); }

Spectrum Spectrum::from_dense(std::span<const double> coeffs) {
  Spectrum s(dim_of_length(coeffs.size()));
  for (Mask m = 0; m < coeffs.size(); ++m) s.coeffs_.emplace_hint(s.coeffs_.end(), m, coeffs[m]);
  return s;
}

double Spectrum::operator[](Mask s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void Spectrum::set(Mask s, double value) {
  if ((s & ~full_mask(dim_)) != 0) throw Error("spectrum mask beyond dimension");
  coeffs_[s] = value;
}

std::vector<double> Spectrum::dense() const {
  std::vector<double> out(std::size_t{1} << dim_, 0.0);
  for (const auto& [m, v] : coeffs_) out[m] = v;
  return out;
}

std::vector<double> uniform_fourier_dense(std::span<const double> f) {
  const int d = dim_of_length(f.size());
  std::vector<double> out(f.begin(), f.end());
  walsh_hadamard(out);
  for (double& v : out) v = std::ldexp(v, -d);
  return out;
}

Spectrum uniform_fourier(std::span<const double> f) {
  return Spectrum::from_dense(uniform_fourier_dense(f));
}

std::vector<double> inverse_fourier(const Spectrum& s) {
  std::vector<double> out = s.dense();
  walsh_hadamard(out);
  return out;
}

double stochastic_coeff(const JointDistribution& dist, const SubsetMask& s) {
  if (s.dim() != dist.dim()) throw Error("stochastic_coeff: dimension mismatch");
  double sum = 0.0;
  for (Mask x = 0; x < dist.num_points(); ++x) {
    sum += dist.label_correlation(x) * parity_sign(s.bits() & x);
  }
  return std::ldexp(sum, -dist.dim());
}

std::vector<double> stochastic_spectrum(const JointDistribution& dist) {
  return uniform_fourier_dense(dist.correlation_table());
}

double empirical_coeff(const Dataset& data, const SubsetMask& s) {
  if (s.dim() != data.dim()) throw Error("empirical_coeff: dimension mismatch");
  long long sum = 0;
  for (const auto& sample : data) sum += sample.y * parity_sign(s.bits() & sample.x);
  return std::ldexp(static_cast<double>(sum) / static_cast<double>(data.size()),
                    -data.dim());
}

std::vector<double> empirical_coeffs(const Dataset& data,
                                     std::span<const SubsetMask> subsets) {
  std::vector<double> out;
  out.reserve(subsets.size());
  for (const auto& s : subsets) out.push_back(empirical_coeff(data, s));
  return out;
}

double concentration_bound(std::size_t n, std::size_t m, double delta, int dim) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
  if (n == 0 || m == 0) throw Error("concentration_bound needs n >= 1 and m >= 1");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::ldexp(std::sqrt(std::log(2.0 * md / delta) / (2.0 * nd)), -dim);
}

}  // namespace junta
