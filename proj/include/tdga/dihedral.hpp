#pragma once

// D_{2n} = <x, y | x^n = y^2 = 1, y x y^-1 = x^-1> with integer-encoded elements.
//
// The element x^i y^j is stored as k = j*n + i, so indices [0, n) are the
// rotations and [n, 2n) the reflections x^i y.

#include <tdga/error.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tdga {

using GroupIndex = std::uint32_t;

class DihedralGroup {
 public:
  explicit DihedralGroup(std::uint32_t n) : n_(n) {
    if (n < 3) throw ParameterError(ParamFault::group_too_small, "dihedral group needs n >= 3, got " + std::to_string(n));
    const std::uint32_t order = 2 * n;
    table_.resize(std::size_t{order} * order);
    for (GroupIndex g = 0; g < order; ++g)
      for (GroupIndex h = 0; h < order; ++h) table_[std::size_t{g} * order + h] = multiply_by_presentation(g, h);
  }

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t order() const noexcept { return 2 * n_; }

  GroupIndex encode(std::uint32_t i, std::uint32_t j) const {
    if (i >= n_ || j > 1) throw DomainError("dihedral exponent out of range");
    return j * n_ + i;
  }

  /// (rotation exponent i, reflection bit j) of x^i y^j.
  std::pair<std::uint32_t, std::uint32_t> decode(GroupIndex g) const {
    check(g);
    return {g % n_, g / n_};
  }

  bool is_reflection(GroupIndex g) const noexcept { return g >= n_; }
  std::uint32_t rotation_exponent(GroupIndex g) const noexcept { return g % n_; }

  GroupIndex op(GroupIndex g, GroupIndex h) const {
    check(g);
    check(h);
    return table_[std::size_t{g} * order() + h];
  }

  /// Unchecked lookup for hot loops.
  GroupIndex op_unchecked(GroupIndex g, GroupIndex h) const noexcept { return table_[std::size_t{g} * order() + h]; }

  GroupIndex inverse(GroupIndex g) const {
    check(g);
    if (g == 0) return 0;
    if (g < n_) return n_ - g;
    return g;
  }

  const std::vector<GroupIndex>& table() const noexcept { return table_; }

 private:
  void check(GroupIndex g) const {
    if (g >= order()) throw DomainError("group index " + std::to_string(g) + " out of range");
  }

  // (x^a y^b)(x^c y^d) = x^{a + (-1)^b c} y^{b + d}
  GroupIndex multiply_by_presentation(GroupIndex g, GroupIndex h) const {
    const std::uint32_t a = g % n_, b = g / n_, c = h % n_, d = h / n_;
    const std::uint32_t rot = b == 0 ? (a + c) % n_ : (a + n_ - c) % n_;
    return ((b + d) % 2) * n_ + rot;
  }

  std::uint32_t n_;
  std::vector<GroupIndex> table_;
};

}  // namespace tdga
