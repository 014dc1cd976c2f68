#pragma once

// Arithmetic in F_q, q = p^m with p an odd prime.
//
// Elements are stored as a single machine word: the base-p positional value
// of their polynomial-basis digits, d_0 + d_1 p + ... + d_{m-1} p^{m-1}. This
// is also the integer representation rep(a) used by index_h and by the
// serialized byte format, so no separate conversion step exists.

#include <tdga/error.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdga {

/// A field element in canonical form. Only meaningful together with its Field.
struct Fe {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(Fe, Fe) = default;
};

template <class R>
concept RandomSource = std::uniform_random_bit_generator<std::remove_reference_t<R>>;

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powmod(u64 base, u64 e, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_rem(Poly a, const Poly& f, u64 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const u64 lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_rem(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly r{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or: f of degree m is irreducible iff gcd(x^{p^k} - x, f) = 1 for k <= m/2.
inline bool is_irreducible(Poly f, u64 p) {
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  Poly xpk{0, 1};
  for (std::size_t k = 1; k <= m / 2; ++k) {
    xpk = poly_powmod(xpk, p, f, p);
    Poly diff = xpk;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// F_{p^m} in polynomial basis modulo a monic irreducible polynomial.
///
/// Immutable after construction. For m > 1 and q <= 2^16 multiplication goes
/// through discrete log tables; mul_schoolbook() is always available and is the
/// route used to build those tables.
class Field {
 public:
  using u64 = std::uint64_t;

  Field(u64 p, unsigned m, std::vector<u64> modulus) : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (p == 2) throw ParameterError(ParamFault::characteristic_two, "characteristic 2 is not supported");
    if (!detail::is_prime(p)) throw ParameterError(ParamFault::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw ParameterError(ParamFault::bad_extension, "extension degree must be >= 1");
    detail::u128 q = 1;
    for (unsigned i = 0; i < m; ++i) {
      q *= p;
      if (q >= (detail::u128{1} << 63))
        throw ParameterError(ParamFault::word_overflow, "q = p^m does not fit in 63 bits");
    }
    q_ = static_cast<u64>(q);
    if (m == 1 && modulus_.empty()) modulus_ = {0, 1};
    if (modulus_.size() != m + 1 || modulus_.back() != 1)
      throw ParameterError(ParamFault::malformed, "modulus must be monic of degree m");
    for (u64 d : modulus_)
      if (d >= p) throw ParameterError(ParamFault::malformed, "modulus digit out of range");
    if (!detail::is_irreducible(modulus_, p))
      throw ParameterError(ParamFault::reducible_modulus, "modulus is reducible over F_p");
    order_factors_ = detail::prime_factors(q_ - 1);
    if (m_ > 1 && q_ <= (u64{1} << 16)) build_log_tables();
  }

  static Field prime(u64 p) { return Field(p, 1, {0, 1}); }

  /// First monic irreducible of degree m when the lower coefficients are
  /// enumerated as a base-p counter (constant term least significant).
  static std::vector<u64> default_modulus(u64 p, unsigned m) {
    if (m == 1) return {0, 1};
    if (p < 3 || !detail::is_prime(p)) throw ParameterError(ParamFault::not_prime, "p must be an odd prime");
    std::vector<u64> f(m + 1, 0);
    f[m] = 1;
    for (;;) {
      std::size_t i = 0;
      while (i < m && ++f[i] == p) f[i++] = 0;
      if (i == m) throw ParameterError(ParamFault::reducible_modulus, "no irreducible polynomial found");
      if (detail::is_irreducible(f, p)) return f;
    }
  }

  static Field with_default_modulus(u64 p, unsigned m) {
    if (p == 2) throw ParameterError(ParamFault::characteristic_two, "characteristic 2 is not supported");
    return Field(p, m, default_modulus(p, m));
  }

  u64 p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  u64 q() const noexcept { return q_; }
  const std::vector<u64>& modulus() const noexcept { return modulus_; }

  Fe zero() const noexcept { return {0}; }
  Fe one() const noexcept { return {1}; }
  Fe minus_one() const noexcept { return {p_ - 1}; }

  /// Image of an integer in the prime subfield.
  Fe from_int(std::int64_t v) const {
    const auto sp = static_cast<std::int64_t>(p_);
    return {static_cast<u64>(((v % sp) + sp) % sp)};
  }

  Fe from_value(u64 v) const {
    if (v >= q_) throw DomainError("field element value out of range");
    return {v};
  }

  std::vector<u64> digits(Fe a) const {
    std::vector<u64> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = a.value % p_;
      a.value /= p_;
    }
    return d;
  }

  Fe from_digits(std::span<const u64> d) const {
    if (d.size() > m_) throw DomainError("too many digits for F_q");
    u64 v = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (d[i] >= p_) throw DomainError("digit out of range");
      v = v * p_ + d[i];
    }
    return {v};
  }

  Fe add(Fe a, Fe b) const {
    if (m_ == 1) return {(a.value + b.value) % p_};
    u64 r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += ((a.value % p_ + b.value % p_) % p_) * scale;
      a.value /= p_;
      b.value /= p_;
      scale *= p_;
    }
    return {r};
  }

  Fe neg(Fe a) const {
    if (m_ == 1) return {(p_ - a.value) % p_};
    u64 r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += ((p_ - a.value % p_) % p_) * scale;
      a.value /= p_;
      scale *= p_;
    }
    return {r};
  }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe mul(Fe a, Fe b) const {
    if (m_ == 1) return {detail::mulmod(a.value, b.value, p_)};
    if (a.value == 0 || b.value == 0) return zero();
    if (!log_.empty()) {
      u64 e = log_[a.value] + log_[b.value];
      if (e >= q_ - 1) e -= q_ - 1;
      return {exp_[e]};
    }
    return mul_schoolbook(a, b);
  }

  /// Polynomial product reduced by the modulus; independent of the log tables.
  Fe mul_schoolbook(Fe a, Fe b) const {
    if (m_ == 1) return {detail::mulmod(a.value, b.value, p_)};
    const auto da = digits(a), db = digits(b);
    std::vector<u64> c(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j) c[i + j] = (c[i + j] + detail::mulmod(da[i], db[j], p_)) % p_;
    for (std::size_t k = c.size(); k-- > m_;) {
      const u64 t = c[k];
      if (t == 0) continue;
      for (unsigned i = 0; i <= m_; ++i) {
        const std::size_t at = k - m_ + i;
        c[at] = (c[at] + p_ - detail::mulmod(t, modulus_[i], p_)) % p_;
      }
    }
    c.resize(m_);
    return from_digits(c);
  }

  Fe pow(Fe a, u64 e) const {
    Fe r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Fe inv(Fe a) const {
    if (a.value == 0) throw DomainError("inverse of zero");
    return pow(a, q_ - 2);
  }

  /// Generalized Euler criterion: a^{(q-1)/2} = 1.
  bool is_square(Fe a) const {
    if (a.value == 0) throw DomainError("is_square is undefined at zero");
    return pow(a, (q_ - 1) / 2) == one();
  }

  u64 mult_order(Fe a) const {
    if (a.value == 0) throw DomainError("zero has no multiplicative order");
    u64 order = q_ - 1;
    for (u64 r : order_factors_)
      while (order % r == 0 && pow(a, order / r) == one()) order /= r;
    return order;
  }

  template <RandomSource R>
  Fe sample(R& rng) const {
    return {std::uniform_int_distribution<u64>(0, q_ - 1)(rng)};
  }

  template <RandomSource R>
  Fe sample_nonzero(R& rng) const {
    return {std::uniform_int_distribution<u64>(1, q_ - 1)(rng)};
  }

  /// Uniform non-square, by rejection on uniform nonzero elements.
  template <RandomSource R>
  Fe get_lambda(R& rng) const {
    for (;;) {
      const Fe l = sample_nonzero(rng);
      if (pow(l, (q_ - 1) / 2) == minus_one()) return l;
    }
  }

  /// Digits ascending, comma separated ("2" for m = 1, "1,2" for 1 + 2t).
  std::string to_string(Fe a) const {
    std::string s;
    for (u64 d : digits(a)) {
      if (!s.empty()) s += ',';
      s += std::to_string(d);
    }
    return s;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  void build_log_tables() {
    Fe g{};
    for (u64 v = 1; v < q_; ++v) {
      if (mult_order_schoolbook(Fe{v}) == q_ - 1) {
        g = Fe{v};
        break;
      }
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Fe x = one();
    for (u64 i = 0; i + 1 < q_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x.value);
      log_[x.value] = static_cast<std::uint32_t>(i);
      x = mul_schoolbook(x, g);
    }
  }

  u64 mult_order_schoolbook(Fe a) const {
    auto pw = [&](Fe b, u64 e) {
      Fe r = one();
      while (e) {
        if (e & 1) r = mul_schoolbook(r, b);
        b = mul_schoolbook(b, b);
        e >>= 1;
      }
      return r;
    };
    u64 order = q_ - 1;
    for (u64 r : order_factors_)
      while (order % r == 0 && pw(a, order / r) == one()) order /= r;
    return order;
  }

  u64 p_;
  unsigned m_;
  u64 q_ = 0;
  std::vector<u64> modulus_;
  std::vector<u64> order_factors_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace tdga
