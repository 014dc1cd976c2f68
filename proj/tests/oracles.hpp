#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls into tdga arithmetic; only plain integers and vectors.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// F_{p^m} with elements as integers sum d_k p^k, multiplication by
// polynomial long division. Slow and obvious on purpose.
struct Fq {
  u64 p;
  unsigned m;
  std::vector<u64> modulus;  // ascending, monic, degree m

  u64 q() const {
    u64 v = 1;
    for (unsigned i = 0; i < m; ++i) v *= p;
    return v;
  }

  std::vector<u64> digits(u64 a) const {
    std::vector<u64> d(m);
    for (unsigned i = 0; i < m; ++i, a /= p) d[i] = a % p;
    return d;
  }

  u64 value(const std::vector<u64>& d) const {
    u64 v = 0, w = 1;
    for (unsigned i = 0; i < m; ++i, w *= p) v += (i < d.size() ? d[i] : 0) * w;
    return v;
  }

  u64 add(u64 a, u64 b) const {
    auto x = digits(a), y = digits(b);
    for (unsigned i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
    return value(x);
  }

  u64 neg(u64 a) const {
    auto x = digits(a);
    for (auto& d : x) d = (p - d) % p;
    return value(x);
  }

  u64 mul(u64 a, u64 b) const {
    auto x = digits(a), y = digits(b);
    std::vector<u64> prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    // reduce top-down: x^k = -(modulus[0..m-1]) x^{k-m}
    for (int k = static_cast<int>(2 * m) - 1; k >= static_cast<int>(m); --k) {
      const u64 c = prod[k];
      if (!c) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < m; ++i) prod[k - m + i] = (prod[k - m + i] + (p - c) * modulus[i]) % p;
    }
    prod.resize(m);
    return value(prod);
  }

  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  // brute force: the b with a*b = 1
  u64 inv(u64 a) const {
    for (u64 b = 1; b < q(); ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

  bool is_square_brute(u64 a) const {
    for (u64 b = 0; b < q(); ++b)
      if (mul(b, b) == a) return true;
    return false;
  }

  u64 order_brute(u64 a) const {
    u64 r = a;
    for (u64 k = 1;; ++k) {
      if (r == 1) return k;
      r = mul(r, a);
    }
  }
};

// D_{2n} by rewriting words in x, y with x^n = y^2 = 1 and yx = x^{n-1}y
// until the normal form x^i y^j appears.
inline std::pair<unsigned, unsigned> dihedral_normal_form(std::string word, unsigned n) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (word[k] == 'y' && word[k + 1] == 'y') {
        word.erase(k, 2);
        changed = true;
        break;
      }
      if (word[k] == 'y' && word[k + 1] == 'x') {
        word.replace(k, 2, std::string(n - 1, 'x') + "y");
        changed = true;
        break;
      }
    }
  }
  // now x...x y? ; reduce x^n
  unsigned xs = 0, ys = 0;
  for (char c : word) (c == 'x' ? xs : ys)++;
  return {xs % n, ys};
}

inline std::string dihedral_word(unsigned i, unsigned j) { return std::string(i, 'x') + std::string(j, 'y'); }

// Index of (x^a y^b)(x^c y^d) via affine maps v -> s v + t on Z_n.
inline unsigned dihedral_affine_product(unsigned g, unsigned h, unsigned n) {
  const unsigned a = g % n, b = g / n, c = h % n, d = h / n;
  const unsigned t = (a + (b ? n - c : c)) % n;
  return ((b + d) % 2) * n + t;
}

// Twisted product in F_q^{alpha_lambda} D_{2n} straight from the definition:
// sum over all basis pairs, multiplier lambda when both are reflections.
inline std::vector<u64> twisted_product(const Fq& f, unsigned n, u64 lambda, const std::vector<u64>& a,
                                        const std::vector<u64>& b) {
  std::vector<u64> c(2 * n, 0);
  for (unsigned g = 0; g < 2 * n; ++g)
    for (unsigned h = 0; h < 2 * n; ++h) {
      if (!a[g] || !b[h]) continue;
      u64 term = f.mul(a[g], b[h]);
      if (g >= n && h >= n) term = f.mul(term, lambda);
      const unsigned k = dihedral_affine_product(g, h, n);
      c[k] = f.add(c[k], term);
    }
  return c;
}

// Adjunct from the definition: coefficient of g moves to g^{-1}, times
// alpha(g, g^{-1}), which is lambda exactly for reflections.
inline std::vector<u64> adjunct(const Fq& f, unsigned n, u64 lambda, const std::vector<u64>& a) {
  std::vector<u64> c(2 * n, 0);
  for (unsigned g = 0; g < n; ++g) c[(n - g) % n] = a[g];
  for (unsigned g = n; g < 2 * n; ++g) c[g] = f.mul(a[g], lambda);
  return c;
}

inline unsigned __int128 index_h(const Fq& f, const std::vector<u64>& a) {
  unsigned __int128 v = 0, w = 1;
  for (u64 x : a) {
    v += w * x;
    w *= f.q();
  }
  return v;
}

}  // namespace oracle
