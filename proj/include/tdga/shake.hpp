#pragma once

// SHAKE256 (FIPS 202) and a seedable XOF-backed bit generator.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace tdga {

namespace detail {

inline void keccak_f1600(std::array<std::uint64_t, 25>& s) {
  static constexpr std::uint64_t kRoundConstants[24] = {
      0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
      0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
      0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
      0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
      0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
      0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};
  static constexpr int kRho[25] = {0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43,
                                   25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14};

  for (std::uint64_t rc : kRoundConstants) {
    // theta
    std::uint64_t c[5], d[5];
    for (int x = 0; x < 5; ++x) c[x] = s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20];
    for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
    for (int i = 0; i < 25; ++i) s[i] ^= d[i % 5];
    // rho and pi
    std::uint64_t b[25];
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(s[x + 5 * y], kRho[x + 5 * y]);
    // chi
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x)
        s[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
    // iota
    s[0] ^= rc;
  }
}

}  // namespace detail

/// Incremental SHAKE256: absorb any number of times, then squeeze any number of times.
class Shake256 {
 public:
  static constexpr std::size_t kRate = 136;

  Shake256& absorb(std::span<const std::uint8_t> data) {
    if (squeezing_) throw std::logic_error("absorb after squeeze");
    for (std::uint8_t byte : data) {
      xor_byte(pos_, byte);
      if (++pos_ == kRate) {
        detail::keccak_f1600(state_);
        pos_ = 0;
      }
    }
    return *this;
  }

  Shake256& absorb(std::string_view s) {
    return absorb(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }

  void squeeze(std::span<std::uint8_t> out) {
    if (!squeezing_) finalize();
    for (auto& byte : out) {
      if (pos_ == kRate) {
        detail::keccak_f1600(state_);
        pos_ = 0;
      }
      byte = static_cast<std::uint8_t>(state_[pos_ / 8] >> (8 * (pos_ % 8)));
      ++pos_;
    }
  }

  std::vector<std::uint8_t> squeeze(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    squeeze(std::span<std::uint8_t>(out));
    return out;
  }

 private:
  void xor_byte(std::size_t at, std::uint8_t b) { state_[at / 8] ^= std::uint64_t{b} << (8 * (at % 8)); }

  void finalize() {
    xor_byte(pos_, 0x1f);
    xor_byte(kRate - 1, 0x80);
    detail::keccak_f1600(state_);
    pos_ = 0;
    squeezing_ = true;
  }

  std::array<std::uint64_t, 25> state_{};
  std::size_t pos_ = 0;
  bool squeezing_ = false;
};

inline std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t out_bytes) {
  Shake256 x;
  x.absorb(input);
  return x.squeeze(out_bytes);
}

/// UniformRandomBitGenerator over the SHAKE256 stream of a seed. Reproducible
/// for a fixed seed; seeded from std::random_device otherwise.
class ShakeRng {
 public:
  using result_type = std::uint64_t;

  explicit ShakeRng(std::span<const std::uint8_t> seed) {
    xof_.absorb(std::string_view("tdga-rng-v1"));
    xof_.absorb(seed);
  }

  explicit ShakeRng(std::uint64_t seed) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    xof_.absorb(std::string_view("tdga-rng-v1"));
    xof_.absorb(std::span<const std::uint8_t>(b, 8));
  }

  static ShakeRng from_entropy() {
    std::random_device rd;
    std::array<std::uint8_t, 32> seed{};
    for (std::size_t i = 0; i < seed.size(); i += 4) {
      const auto w = rd();
      for (std::size_t j = 0; j < 4; ++j) seed[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
    }
    return ShakeRng(std::span<const std::uint8_t>(seed));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint8_t b[8];
    xof_.squeeze(std::span<std::uint8_t>(b, 8));
    result_type v = 0;
    for (int i = 7; i >= 0; --i) v = v << 8 | b[i];
    return v;
  }

 private:
  Shake256 xof_;
};

}  // namespace tdga
