#pragma once

#include "oracles.hpp"

#include <tdga/algebra.hpp>
#include <tdga/field.hpp>
#include <tdga/kex.hpp>
#include <tdga/shake.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace testing_support {

struct ParamSet {
  std::uint64_t p;
  unsigned m;
  std::uint32_t n;

  std::string name() const { return "p" + std::to_string(p) + "m" + std::to_string(m) + "n" + std::to_string(n); }
};

// The three sets every protocol-level property runs over.
inline const std::vector<ParamSet>& protocol_sets() {
  static const std::vector<ParamSet> sets{{3, 1, 3}, {5, 1, 5}, {3, 2, 9}};
  return sets;
}

inline tdga::PublicParams make_params(const ParamSet& s, std::uint64_t seed) {
  tdga::ShakeRng rng(seed);
  return tdga::setup_public_params(s.p, s.m, s.n, rng);
}

inline oracle::Fq oracle_field(const tdga::Field& f) { return oracle::Fq{f.p(), f.m(), f.modulus()}; }

inline std::vector<std::uint64_t> values(const tdga::Element& e) {
  std::vector<std::uint64_t> v;
  v.reserve(e.size());
  for (auto c : e.coeffs) v.push_back(c.value);
  return v;
}

inline tdga::Element element(const std::vector<std::uint64_t>& v) {
  tdga::Element e;
  for (auto x : v) e.coeffs.push_back(tdga::Fe{x});
  return e;
}

}  // namespace testing_support
