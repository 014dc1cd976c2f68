#pragma once

// KEM from the PKE via re-encryption check and implicit rejection.
//
//   KeyGen:  (pk, sk) <- Gen, s <-R M
//   Encaps:  m <-R M, r = G1(rep(m) || rep(pk)), c = Enc(m, pk, r), K = G2(rep(m) || rep(c))
//   Decaps:  m' = Dec(c, sk), r' = G1(rep(m') || rep(pk));
//            K = G2(rep(m') || rep(c)) if Enc(m', pk, r') == c, else G2(rep(s) || rep(c))
//
// G1(x) squeezes o = ceil(log2 p) m (n + ceil((n+1)/2)) bits of SHAKE256(x);
// G2(x) = SHAKE256(0x02 || x) truncated to 256 bits.

#include <tdga/algebra.hpp>
#include <tdga/hex.hpp>
#include <tdga/kex.hpp>
#include <tdga/pke.hpp>
#include <tdga/shake.hpp>

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace tdga {

inline constexpr std::size_t kSharedKeyBits = 256;
inline constexpr std::uint8_t kG2Prefix = 0x02;

struct SharedKey {
  Bytes bytes;

  friend bool operator==(const SharedKey&, const SharedKey&) = default;
};

struct KemKeyPair {
  Element pk;
  SecretPair sk;
  Element s;
};

struct Encapsulation {
  PkeCiphertext ct;
  SharedKey key;
};

/// Bits per base-p digit in the G1 output, ceil(log2 p).
inline unsigned g1_digit_bits(const Algebra& alg) { return static_cast<unsigned>(std::bit_width(alg.field().p() - 1)); }

/// o = ceil(log2 p) * m * (n + ceil((n+1)/2)).
inline std::size_t g1_output_bits(const Algebra& alg) {
  return std::size_t{g1_digit_bits(alg)} * alg.field().m() * (alg.n() + alg.gamma_free_count());
}

/// Reads o bits MSB-first as consecutive ceil(log2 p)-bit big-endian chunks,
/// each reduced mod p. The first m n digits fill a (coefficient-major, digits
/// ascending), the remaining m ceil((n+1)/2) digits fill Gamma's free
/// coefficients a_0, ..., a_{floor(n/2)}. No nonzero requirement is applied.
inline SecretPair decode_secret_pair(const Algebra& alg, std::span<const std::uint8_t> bits) {
  const std::size_t need = g1_output_bits(alg);
  if (bits.size() * 8 < need) throw DomainError("not enough bits to decode a secret pair");
  const unsigned w = g1_digit_bits(alg);
  const Field& f = alg.field();
  std::size_t pos = 0;
  auto next_digit = [&] {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < w; ++b, ++pos) v = v << 1 | ((bits[pos / 8] >> (7 - pos % 8)) & 1u);
    return v % f.p();
  };
  std::vector<std::uint64_t> digits(f.m());
  auto next_fe = [&] {
    for (auto& d : digits) d = next_digit();
    return f.from_digits(digits);
  };
  SecretPair s{alg.zero(), {}};
  for (std::uint32_t i = 0; i < alg.n(); ++i) s.a[i] = next_fe();
  std::vector<Fe> free(alg.gamma_free_count());
  for (auto& x : free) x = next_fe();
  s.gamma = alg.gamma_from_free(free);
  return s;
}

/// G1: {0,1}* -> SK. Blocks of ceil(o/8) bytes are squeezed from one
/// SHAKE256(x) stream until a block decodes to a pair with both components nonzero.
inline SecretPair hash_g1(std::span<const std::uint8_t> x, const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  Shake256 xof;
  xof.absorb(x);
  const std::size_t block = (g1_output_bits(alg) + 7) / 8;
  for (;;) {
    const Bytes bits = xof.squeeze(block);
    SecretPair s = decode_secret_pair(alg, bits);
    if (!alg.is_zero(s.a) && !alg.is_zero(s.gamma)) return s;
  }
}

/// G2: {0,1}* -> {0,1}^l1, SHAKE256 over 0x02 || x.
inline SharedKey hash_g2(std::span<const std::uint8_t> x, std::size_t l1_bits = kSharedKeyBits) {
  if (l1_bits % 8) throw DomainError("l1 must be a multiple of 8");
  Shake256 xof;
  const std::uint8_t prefix = kG2Prefix;
  xof.absorb(std::span<const std::uint8_t>(&prefix, 1));
  xof.absorb(x);
  return SharedKey{xof.squeeze(l1_bits / 8)};
}

template <RandomSource R>
KemKeyPair kem_keygen(const PublicParams& pp, R& rng) {
  PkeKeyPair kp = pke_gen(pp, rng);
  Element s = pp.algebra.sample_full(rng);
  return KemKeyPair{std::move(kp.pk), std::move(kp.sk), std::move(s)};
}

namespace detail {

inline Bytes concat_rep(const Algebra& alg, const Element& first, std::span<const std::uint8_t> tail) {
  Bytes out;
  out.reserve(alg.rep_size() + tail.size());
  alg.append_rep(first, out);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace detail

/// Encapsulation for a caller-chosen message m; Encaps is this with m <-R M.
inline Encapsulation kem_encaps_with_message(const Element& m, const Element& pk, const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  const SecretPair r = hash_g1(detail::concat_rep(alg, m, alg.rep(pk)), pp);
  PkeCiphertext c = pke_enc(m, pk, r, pp);
  SharedKey k = hash_g2(detail::concat_rep(alg, m, rep(c, alg)));
  return Encapsulation{std::move(c), std::move(k)};
}

template <RandomSource R>
Encapsulation kem_encaps(const Element& pk, const PublicParams& pp, R& rng) {
  return kem_encaps_with_message(pp.algebra.sample_full(rng), pk, pp);
}

/// Always returns a key. Both candidate keys are computed and the result is
/// chosen by a masked select on the re-encryption comparison.
inline SharedKey kem_decaps(const KemKeyPair& kp, const PkeCiphertext& c, const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  const Bytes c_rep = rep(c, alg);
  const Element m = pke_dec(c, kp.sk, pp);
  const SecretPair r = hash_g1(detail::concat_rep(alg, m, alg.rep(kp.pk)), pp);
  const Bytes again = rep(pke_enc(m, kp.pk, r, pp), alg);

  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < c_rep.size(); ++i) diff |= static_cast<std::uint8_t>(c_rep[i] ^ again[i]);
  // 0xff when the re-encryption matched, 0x00 otherwise
  const auto keep = static_cast<std::uint8_t>((static_cast<unsigned>(diff) - 1u) >> 8);

  const SharedKey honest = hash_g2(detail::concat_rep(alg, m, c_rep));
  const SharedKey reject = hash_g2(detail::concat_rep(alg, kp.s, c_rep));
  SharedKey out{Bytes(honest.bytes.size())};
  for (std::size_t i = 0; i < out.bytes.size(); ++i)
    out.bytes[i] = static_cast<std::uint8_t>((honest.bytes[i] & keep) | (reject.bytes[i] & ~keep));
  return out;
}

}  // namespace tdga
