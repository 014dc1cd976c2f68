#pragma once

// Probabilistic public-key encryption derived from the key exchange.
//
// Gen: pk = a1 h gamma1. Enc(m, pk, (a2, gamma2)): c1 = a2 h gamma2,
// c2 = m + a2 pk gamma2^. Dec: m = c2 - a1 c1 gamma1^.

#include <tdga/algebra.hpp>
#include <tdga/kex.hpp>

#include <cstdint>
#include <vector>

namespace tdga {

struct PkeKeyPair {
  Element pk;
  SecretPair sk;
};

struct PkeCiphertext {
  Element c1;
  Element c2;

  friend bool operator==(const PkeCiphertext&, const PkeCiphertext&) = default;
};

template <RandomSource R>
PkeKeyPair pke_gen(const PublicParams& pp, R& rng) {
  SecretPair sk = pp.algebra.sample_secret(rng);
  Element pk = derive_public(sk, pp);
  return PkeKeyPair{std::move(pk), std::move(sk)};
}

/// Deterministic in (m, pk, r2).
inline PkeCiphertext pke_enc(const Element& m, const Element& pk, const SecretPair& r2, const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  alg.check(m);
  return PkeCiphertext{derive_public(r2, pp), alg.add(m, derive_shared(r2, pk, pp))};
}

/// Never fails structurally; a wrong key just yields an unrelated element.
inline Element pke_dec(const PkeCiphertext& c, const SecretPair& sk, const PublicParams& pp) {
  return pp.algebra.sub(c.c2, derive_shared(sk, c.c1, pp));
}

/// rep(c1) || rep(c2).
inline std::vector<std::uint8_t> rep(const PkeCiphertext& c, const Algebra& alg) {
  std::vector<std::uint8_t> out;
  out.reserve(2 * alg.rep_size());
  alg.append_rep(c.c1, out);
  alg.append_rep(c.c2, out);
  return out;
}

}  // namespace tdga
