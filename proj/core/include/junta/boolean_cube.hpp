#pragma once

// Points and coordinate subsets of the Boolean cube {-1,+1}^d, packed into
// 32-bit masks.
//
// Bit convention (frozen, model files depend on it): bit j of a point is set
// iff coordinate x_{j+1} = -1. A character chi_S(x) = prod_{j in S} x_j is then
// (-1)^popcount(S & x).

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace junta {

/// Largest dimension accepted for points and subsets.
inline constexpr int kMaxPointDim = 24;
/// Largest dimension for explicit 2^(d+1) probability tables.
inline constexpr int kMaxTableDim = 20;

using Mask = std::uint32_t;

/// Throws junta::Error unless 1 <= dim <= limit.
void require_dim(int dim, int limit = kMaxPointDim);

constexpr Mask full_mask(int dim) noexcept {
  return dim >= 32 ? ~Mask{0} : (Mask{1} << dim) - 1;
}

/// (-1)^popcount(bits): the value of the character chi_S at x when
/// bits = S & x.
constexpr int parity_sign(Mask bits) noexcept {
  return (std::popcount(bits) & 1) ? -1 : 1;
}

/// Packs the bits of `x` at the positions of `subset` into the low
/// popcount(subset) bits (software PEXT). Used to index the 2^k cells x^J.
constexpr Mask gather_bits(Mask x, Mask subset) noexcept {
  Mask out = 0;
  Mask bit = 1;
  for (Mask s = subset; s != 0; s &= s - 1) {
    if (x & (s & -s)) out |= bit;
    bit <<= 1;
  }
  return out;
}

/// Inverse of gather_bits: spreads the low bits of `local` onto `subset`.
constexpr Mask scatter_bits(Mask local, Mask subset) noexcept {
  Mask out = 0;
  for (Mask s = subset; s != 0; s &= s - 1, local >>= 1) {
    if (local & 1) out |= (s & -s);
  }
  return out;
}

/// A point x of {-1,+1}^d.
class CubePoint {
 public:
  CubePoint(Mask bits, int dim);

  /// From explicit +-1 coordinates x_1..x_d.
  static CubePoint from_coords(std::span<const int> coords);
  static CubePoint from_coords(std::initializer_list<int> coords) {
    return from_coords(std::span<const int>(coords.begin(), coords.size()));
  }

  Mask bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }

  /// Coordinate x_{j+1} for 0-based j; exactly +1 or -1.
  int coord(int j) const;

  friend bool operator==(const CubePoint&, const CubePoint&) = default;

 private:
  Mask bits_;
  int dim_;
};

/// A subset S of [d] as a d-bit mask; indexes the monomial chi_S.
class SubsetMask {
 public:
  SubsetMask(Mask bits, int dim);

  /// From 1-based coordinates, e.g. {1, 3} -> bits 0b101.
  static SubsetMask from_coordinates(int dim, std::span<const int> one_based);
  static SubsetMask from_coordinates(int dim, std::initializer_list<int> one_based) {
    return from_coordinates(dim, std::span<const int>(one_based.begin(), one_based.size()));
  }
  static SubsetMask empty(int dim) { return {0, dim}; }
  static SubsetMask all(int dim) { return {full_mask(dim), dim}; }

  Mask bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }
  int size() const noexcept { return std::popcount(bits_); }
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(int j) const noexcept { return (bits_ >> j) & 1U; }
  bool is_subset_of(const SubsetMask& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  /// 1-based coordinates in increasing order.
  std::vector<int> coordinates() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  friend auto operator<=>(const SubsetMask& a, const SubsetMask& b) noexcept {
    return a.bits_ <=> b.bits_;
  }

 private:
  Mask bits_;
  int dim_;
};

/// chi_S(x) = prod_{j in S} x_j. Throws on dimension mismatch.
int chi_eval(const SubsetMask& s, const CubePoint& x);

enum class SubsetRange { exactly_k, up_to_k };

/// All subsets of [d] with |S| = k (or <= k), ascending by mask value.
std::vector<SubsetMask> enumerate_subsets(int d, int k, SubsetRange range);

/// Binomial coefficient C(n, k); 0 when k > n.
std::uint64_t binomial(int n, int k);

}  // namespace junta
