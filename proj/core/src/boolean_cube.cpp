#include "junta/boolean_cube.hpp"

#include <algorithm>
#include <string>

#include "junta/error.hpp"

namespace junta {

void require_dim(int dim, int limit) {
  if (dim < 1 || dim > limit) {
    throw Error("dimension " + std::to_string(dim) + " outside [1, " +
                std::to_string(limit) + "]");
  }
}

CubePoint::CubePoint(Mask bits, int dim) : bits_(bits), dim_(dim) {
  require_dim(dim);
  if ((bits & ~full_mask(dim)) != 0) {
    throw Error("point has bits set beyond dimension " + std::to_string(dim));
  }
}

CubePoint CubePoint::from_coords(std::span<const int> coords) {
  Mask bits = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == -1) {
      bits |= Mask{1} << j;
    } else if (coords[j] != 1) {
      throw Error("cube coordinates must be +1 or -1");
    }
  }
  return {bits, static_cast<int>(coords.size())};
}

int CubePoint::coord(int j) const {
  if (j < 0 || j >= dim_) throw Error("coordinate index out of range");
  return ((bits_ >> j) & 1U) ? -1 : 1;
}

SubsetMask::SubsetMask(Mask bits, int dim) : bits_(bits), dim_(dim) {
  require_dim(dim);
  if ((bits & ~full_mask(dim)) != 0) {
    throw Error("subset has coordinates beyond dimension " + std::to_string(dim));
  }
}

SubsetMask SubsetMask::from_coordinates(int dim, std::span<const int> one_based) {
  require_dim(dim);
  Mask bits = 0;
  for (int c : one_based) {
    if (c < 1 || c > dim) {
      throw Error("coordinate " + std::to_string(c) + " outside [1, " +
                  std::to_string(dim) + "]");
    }
    bits |= Mask{1} << (c - 1);
  }
  return {bits, dim};
}

std::vector<int> SubsetMask::coordinates() const {
  std::vector<int> out;
  for (int j = 0; j < dim_; ++j) {
    if (contains(j)) out.push_back(j + 1);
  }
  return out;
}

int chi_eval(const SubsetMask& s, const CubePoint& x) {
  if (s.dim() != x.dim()) {
    throw Error("chi_eval: subset has dimension " + std::to_string(s.dim()) +
                " but point has " + std::to_string(x.dim()));
  }
  return parity_sign(s.bits() & x.bits());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace {

// Masks with exactly k of the low d bits set, ascending (Gosper's hack).
void append_fixed_weight(int d, int k, std::vector<Mask>& out) {
  if (k == 0) {
    out.push_back(0);
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << d;
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  while (v < limit) {
    out.push_back(static_cast<Mask>(v));
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

}  // namespace

std::vector<SubsetMask> enumerate_subsets(int d, int k, SubsetRange range) {
  require_dim(d);
  if (k < 0 || k > d) {
    throw Error("enumerate_subsets: k = " + std::to_string(k) + " must lie in [0, " +
                std::to_string(d) + "]");
  }
  std::vector<Mask> masks;
  if (range == SubsetRange::exactly_k) {
    masks.reserve(binomial(d, k));
    append_fixed_weight(d, k, masks);
  } else {
    for (int l = 0; l <= k; ++l) append_fixed_weight(d, l, masks);
    std::sort(masks.begin(), masks.end());
  }
  std::vector<SubsetMask> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.emplace_back(m, d);
  return out;
}

}  // namespace junta
