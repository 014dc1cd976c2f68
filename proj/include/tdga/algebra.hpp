#pragma once

// The twisted group algebra F_q^{alpha_lambda} D_{2n}.
//
// An element is a vector of 2n coefficients; coeffs[i] multiplies the basis
// element of x^i and coeffs[n + i] that of x^i y. The rotation part
// (indices [0, n)) spans F^a C_n, the reflection part spans F^a C_n y, and
// Gamma is the reflection-supported subspace with coeffs[n+i] = coeffs[n+(n-i)%n].

#include <tdga/cocycle.hpp>
#include <tdga/dihedral.hpp>
#include <tdga/error.hpp>
#include <tdga/field.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdga {

using IndexH = boost::multiprecision::cpp_int;

struct Element {
  std::vector<Fe> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  Fe& operator[](std::size_t i) { return coeffs[i]; }
  Fe operator[](std::size_t i) const { return coeffs[i]; }

  friend bool operator==(const Element&, const Element&) = default;
};

/// (a, gamma) with a in F^a C_n and gamma in Gamma.
struct SecretPair {
  Element a;
  Element gamma;

  friend bool operator==(const SecretPair&, const SecretPair&) = default;
};

class Algebra {
 public:
  /// Requires lambda to be a non-square and p | 2n.
  Algebra(Field field, DihedralGroup group, Fe lambda) : Algebra(std::move(field), std::move(group), lambda, true) {}

  /// Skips the p | 2n requirement, for structural checks at (p, n) outside the
  /// protocol range. make_public_params() rejects such an algebra.
  static Algebra without_order_check(Field field, DihedralGroup group, Fe lambda) {
    return Algebra(std::move(field), std::move(group), lambda, false);
  }

  bool characteristic_divides_order() const noexcept { return (2 * std::uint64_t{group_.n()}) % field_.p() == 0; }

  const Field& field() const noexcept { return field_; }
  const DihedralGroup& group() const noexcept { return group_; }
  const Cocycle& cocycle() const noexcept { return cocycle_; }
  Fe lambda() const noexcept { return lambda_; }
  std::uint32_t n() const noexcept { return group_.n(); }
  std::uint32_t dim() const noexcept { return 2 * group_.n(); }

  Element zero() const { return Element{std::vector<Fe>(dim(), field_.zero())}; }
  Element one() const { return basis(0); }

  Element basis(GroupIndex g, Fe coefficient = Fe{1}) const {
    Element e = zero();
    e.coeffs.at(g) = coefficient;
    return e;
  }

  /// Builds an element from small integers, reduced into the prime subfield.
  Element from_ints(std::span<const std::int64_t> values) const {
    if (values.size() != dim()) throw DomainError("expected 2n coefficients");
    Element e = zero();
    for (std::size_t i = 0; i < values.size(); ++i) e[i] = field_.from_int(values[i]);
    return e;
  }
  Element from_ints(std::initializer_list<std::int64_t> values) const {
    return from_ints(std::span<const std::int64_t>(values.begin(), values.size()));
  }

  Element add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element c = zero();
    for (std::size_t i = 0; i < dim(); ++i) c[i] = field_.add(a[i], b[i]);
    return c;
  }

  Element sub(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element c = zero();
    for (std::size_t i = 0; i < dim(); ++i) c[i] = field_.sub(a[i], b[i]);
    return c;
  }

  Element neg(const Element& a) const {
    check(a);
    Element c = zero();
    for (std::size_t i = 0; i < dim(); ++i) c[i] = field_.neg(a[i]);
    return c;
  }

  Element scale(Fe s, const Element& a) const {
    check(a);
    Element c = zero();
    for (std::size_t i = 0; i < dim(); ++i) c[i] = field_.mul(s, a[i]);
    return c;
  }

  /// Schoolbook twisted product: c[gh] += a[g] b[h] alpha(g, h).
  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element c = zero();
    for (GroupIndex i = 0; i < dim(); ++i) {
      if (a[i] == field_.zero()) continue;
      for (GroupIndex j = 0; j < dim(); ++j) {
        if (b[j] == field_.zero()) continue;
        const GroupIndex k = group_.op_unchecked(i, j);
        const Fe term = field_.mul(field_.mul(a[i], b[j]), cocycle_(i, j));
        c[k] = field_.add(c[k], term);
      }
    }
    return c;
  }

  Element mul(const Element& a, const Element& b, const Element& c) const { return mul(mul(a, b), c); }

  /// a^ = sum a_g alpha(g, g^-1) (g^-1).
  Element adjunct(const Element& a) const {
    check(a);
    Element c = zero();
    for (GroupIndex i = 0; i < dim(); ++i) {
      const GroupIndex j = group_.inverse(i);
      c[j] = field_.mul(a[i], cocycle_(i, j));
    }
    return c;
  }

  bool is_zero(const Element& a) const {
    check(a);
    for (Fe c : a.coeffs)
      if (c != field_.zero()) return false;
    return true;
  }

  bool in_rotation_part(const Element& a) const {
    check(a);
    for (std::uint32_t i = n(); i < dim(); ++i)
      if (a[i] != field_.zero()) return false;
    return true;
  }

  bool in_reflection_part(const Element& a) const {
    check(a);
    for (std::uint32_t i = 0; i < n(); ++i)
      if (a[i] != field_.zero()) return false;
    return true;
  }

  Element rotation_part(const Element& a) const {
    check(a);
    Element c = zero();
    for (std::uint32_t i = 0; i < n(); ++i) c[i] = a[i];
    return c;
  }

  Element reflection_part(const Element& a) const {
    check(a);
    Element c = zero();
    for (std::uint32_t i = n(); i < dim(); ++i) c[i] = a[i];
    return c;
  }

  bool in_gamma(const Element& a) const {
    if (!in_reflection_part(a)) return false;
    for (std::uint32_t i = 1; i < n(); ++i)
      if (a[n() + i] != a[n() + (n() - i)]) return false;
    return true;
  }

  /// Moves reflection coefficients onto the matching rotations.
  Element phi(const Element& a) const {
    if (!in_reflection_part(a)) throw DomainError("phi is defined on the reflection part only");
    Element c = zero();
    for (std::uint32_t i = 0; i < n(); ++i) c[i] = a[n() + i];
    return c;
  }

  Element phi_inv(const Element& a) const {
    if (!in_rotation_part(a)) throw DomainError("phi_inv is defined on the rotation part only");
    Element c = zero();
    for (std::uint32_t i = 0; i < n(); ++i) c[n() + i] = a[i];
    return c;
  }

  /// Number of free coefficients of a Gamma element: a_0, a_1, ..., a_{floor(n/2)}.
  std::uint32_t gamma_free_count() const noexcept { return n() / 2 + 1; }

  Element gamma_from_free(std::span<const Fe> free) const {
    if (free.size() != gamma_free_count()) throw DomainError("wrong number of free Gamma coefficients");
    Element c = zero();
    c[n()] = free[0];
    for (std::uint32_t i = 1; i <= n() / 2; ++i) {
      c[n() + i] = free[i];
      c[n() + (n() - i) % n()] = free[i];
    }
    return c;
  }

  /// The k-th Gamma element, free coefficients read as base-q digits of k (a_0 least significant).
  Element gamma_at(std::uint64_t k) const {
    std::vector<Fe> free(gamma_free_count());
    for (auto& f : free) {
      f = Fe{k % field_.q()};
      k /= field_.q();
    }
    return gamma_from_free(free);
  }

  /// |Gamma| = q^{ceil((n+1)/2)}; throws CapacityError if it does not fit in 64 bits.
  std::uint64_t gamma_count() const { return checked_power(field_.q(), gamma_free_count()); }

  /// q^n = |F^a C_n|; throws CapacityError if it does not fit in 64 bits.
  std::uint64_t rotation_count() const { return checked_power(field_.q(), n()); }

  template <RandomSource R>
  Element sample_full(R& rng) const {
    Element c = zero();
    for (auto& x : c.coeffs) x = field_.sample(rng);
    return c;
  }

  template <RandomSource R>
  Element sample_rotation(R& rng) const {
    Element c = zero();
    for (std::uint32_t i = 0; i < n(); ++i) c[i] = field_.sample(rng);
    return c;
  }

  template <RandomSource R>
  Element sample_reflection(R& rng) const {
    Element c = zero();
    for (std::uint32_t i = n(); i < dim(); ++i) c[i] = field_.sample(rng);
    return c;
  }

  template <RandomSource R>
  Element sample_gamma(R& rng) const {
    std::vector<Fe> free(gamma_free_count());
    for (auto& f : free) f = field_.sample(rng);
    return gamma_from_free(free);
  }

  /// h = h1 + h2 with h1 a nonzero rotation element and h2 a nonzero reflection element.
  template <RandomSource R>
  Element sample_h(R& rng) const {
    Element h1, h2;
    do h1 = sample_rotation(rng);
    while (is_zero(h1));
    do h2 = sample_reflection(rng);
    while (is_zero(h2));
    return add(h1, h2);
  }

  /// Uniform over nonzero a in F^a C_n and nonzero gamma in Gamma.
  template <RandomSource R>
  SecretPair sample_secret(R& rng) const {
    SecretPair s;
    do s.a = sample_rotation(rng);
    while (is_zero(s.a));
    do s.gamma = sample_gamma(rng);
    while (is_zero(s.gamma));
    return s;
  }

  /// H(a) = sum_i rep(a_i) q^i.
  IndexH index_h(const Element& a) const {
    check(a);
    IndexH v = 0;
    for (std::size_t i = dim(); i-- > 0;) {
      v *= field_.q();
      v += a[i].value;
    }
    return v;
  }

  Element index_h_inv(IndexH v) const {
    if (v < 0) throw DomainError("negative H index");
    Element c = zero();
    const IndexH q = field_.q();
    for (std::uint32_t i = 0; i < dim(); ++i) {
      c[i] = Fe{static_cast<std::uint64_t>(v % q)};
      v /= q;
    }
    if (v != 0) throw DomainError("H index exceeds q^{2n} - 1");
    return c;
  }

  Element index_h_inv(std::uint64_t v) const {
    Element c = zero();
    for (std::uint32_t i = 0; i < dim(); ++i) {
      c[i] = Fe{v % field_.q()};
      v /= field_.q();
    }
    if (v != 0) throw DomainError("H index exceeds q^{2n} - 1");
    return c;
  }

  /// Bytes per base-p digit in rep(): ceil(ceil(log2 p) / 8).
  std::size_t digit_bytes() const noexcept {
    return (static_cast<std::size_t>(std::bit_width(field_.p() - 1)) + 7) / 8;
  }

  std::size_t rep_size() const noexcept { return std::size_t{dim()} * field_.m() * digit_bytes(); }

  /// Canonical fixed-length encoding: coefficients in index order, each as its
  /// m base-p digits ascending, each digit big-endian in digit_bytes() bytes.
  void append_rep(const Element& a, std::vector<std::uint8_t>& out) const {
    check(a);
    const std::size_t width = digit_bytes();
    for (Fe c : a.coeffs)
      for (std::uint64_t d : field_.digits(c))
        for (std::size_t b = width; b-- > 0;) out.push_back(static_cast<std::uint8_t>(d >> (8 * b)));
  }

  std::vector<std::uint8_t> rep(const Element& a) const {
    std::vector<std::uint8_t> out;
    out.reserve(rep_size());
    append_rep(a, out);
    return out;
  }

  Element from_rep(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != rep_size())
      throw ParameterError(ParamFault::malformed, "element encoding has " + std::to_string(bytes.size()) +
                                                      " bytes, expected " + std::to_string(rep_size()));
    const std::size_t width = digit_bytes();
    Element c = zero();
    std::size_t at = 0;
    std::vector<std::uint64_t> d(field_.m());
    for (auto& x : c.coeffs) {
      for (auto& digit : d) {
        digit = 0;
        for (std::size_t b = 0; b < width; ++b) digit = digit << 8 | bytes[at++];
        if (digit >= field_.p()) throw ParameterError(ParamFault::malformed, "digit out of range in encoding");
      }
      x = field_.from_digits(d);
    }
    return c;
  }

  void check(const Element& a) const {
    if (a.size() != dim())
      throw DomainError("element has " + std::to_string(a.size()) + " coefficients, expected " +
                        std::to_string(dim()));
  }

 private:
  Algebra(Field field, DihedralGroup group, Fe lambda, bool order_check)
      : field_(std::move(field)), group_(std::move(group)), lambda_(lambda),
        cocycle_(validated_alpha(field_, group_, lambda, order_check)) {}

  // Runs before the cocycle is built so a bad lambda surfaces as a parameter fault.
  static Cocycle validated_alpha(const Field& field, const DihedralGroup& group, Fe lambda, bool order_check) {
    if (order_check && (2 * std::uint64_t{group.n()}) % field.p() != 0)
      throw ParameterError(ParamFault::characteristic_not_dividing_order,
                           "p = " + std::to_string(field.p()) + " does not divide 2n = " +
                               std::to_string(2 * group.n()));
    if (lambda.value >= field.q()) throw DomainError("lambda is not an element of F_q");
    if (lambda.value == 0) throw ParameterError(ParamFault::square_lambda, "lambda must be nonzero");
    if (field.is_square(lambda))
      throw ParameterError(ParamFault::square_lambda, "lambda = " + field.to_string(lambda) + " is a square");
    return Cocycle::alpha(field, group.n(), lambda);
  }

  static std::uint64_t checked_power(std::uint64_t base, std::uint32_t e) {
    unsigned __int128 v = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      v *= base;
      if (v > ~std::uint64_t{0}) throw CapacityError("count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(v);
  }

  Field field_;
  DihedralGroup group_;
  Fe lambda_;
  Cocycle cocycle_;
};

}  // namespace tdga
