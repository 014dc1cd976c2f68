#include "common.hpp"

#include <tdga/algebra.hpp>
#include <tdga/error.hpp>
#include <tdga/shake.hpp>

#include <gtest/gtest.h>

#include <set>

using tdga::Algebra;
using tdga::DihedralGroup;
using tdga::Element;
using tdga::Fe;
using tdga::Field;
using testing_support::element;
using testing_support::values;

namespace {

Algebra f3n3() { return Algebra(Field::prime(3), DihedralGroup(3), Fe{2}); }

struct AlgebraSet {
  std::string name;
  Algebra alg;
};

std::vector<AlgebraSet> algebras() {
  std::vector<AlgebraSet> out;
  for (const auto& s : testing_support::protocol_sets()) {
    const auto pp = testing_support::make_params(s, 100 + s.n);
    out.push_back({s.name(), pp.algebra});
  }
  return out;
}

}  // namespace

TEST(Algebra, AdditionExample) {
  const Algebra a = f3n3();
  EXPECT_EQ(a.add(a.from_ints({1, 2, 0, 0, 0, 0}), a.from_ints({2, 2, 0, 0, 0, 0})), a.from_ints({0, 1, 0, 0, 0, 0}));
  const Element x = a.from_ints({1, 2, 0, 1, 0, 2});
  EXPECT_EQ(a.add(x, a.zero()), x);
  EXPECT_EQ(a.add(x, a.neg(x)), a.zero());
  EXPECT_EQ(a.sub(x, x), a.zero());
}

TEST(Algebra, ProductExamples) {
  const Algebra a = f3n3();
  const Element y = a.basis(3);
  EXPECT_EQ(a.mul(y, y), a.from_ints({2, 0, 0, 0, 0, 0}));
  const Element one_plus_y = a.add(a.one(), y);
  EXPECT_EQ(a.mul(one_plus_y, one_plus_y), a.from_ints({0, 0, 0, 2, 0, 0}));
  const Element x = a.from_ints({1, 2, 0, 1, 0, 2});
  EXPECT_EQ(a.mul(a.one(), x), x);
  EXPECT_EQ(a.mul(x, a.one()), x);
}

TEST(Algebra, AdjunctExamples) {
  const Algebra a = f3n3();
  EXPECT_EQ(a.adjunct(a.basis(1)), a.basis(2));
  EXPECT_EQ(a.adjunct(a.basis(3)), a.from_ints({0, 0, 0, 2, 0, 0}));
  EXPECT_EQ(a.adjunct(a.from_ints({0, 0, 0, 1, 1, 1})), a.from_ints({0, 0, 0, 2, 2, 2}));
}

TEST(Algebra, PhiExamples) {
  const Algebra a = f3n3();
  EXPECT_EQ(a.phi(a.basis(3)), a.one());
  EXPECT_EQ(a.phi(a.from_ints({0, 0, 0, 1, 2, 2})), a.from_ints({1, 2, 2, 0, 0, 0}));
  EXPECT_EQ(a.phi(a.zero()), a.zero());
  EXPECT_EQ(a.phi_inv(a.from_ints({1, 2, 2, 0, 0, 0})), a.from_ints({0, 0, 0, 1, 2, 2}));
  EXPECT_THROW((void)a.phi(a.one()), tdga::DomainError);
  EXPECT_THROW((void)a.phi_inv(a.basis(4)), tdga::DomainError);
}

TEST(Algebra, GammaMembership) {
  const Algebra a = f3n3();
  for (std::uint64_t a0 = 0; a0 < 3; ++a0)
    for (std::uint64_t a1 = 0; a1 < 3; ++a1) EXPECT_TRUE(a.in_gamma(element({0, 0, 0, a0, a1, a1})));
  EXPECT_FALSE(a.in_gamma(element({0, 0, 0, 5, 1, 2})));
  EXPECT_TRUE(a.in_gamma(a.zero()));
  EXPECT_FALSE(a.in_gamma(a.from_ints({1, 0, 0, 1, 1, 1})));
}

TEST(Algebra, ProductAndAdjunctMatchOracle) {
  tdga::ShakeRng rng(31);
  for (const auto& [name, alg] : algebras()) {
    const auto f = testing_support::oracle_field(alg.field());
    for (int i = 0; i < 200; ++i) {
      const Element x = alg.sample_full(rng), y = alg.sample_full(rng);
      ASSERT_EQ(values(alg.mul(x, y)), oracle::twisted_product(f, alg.n(), alg.lambda().value, values(x), values(y)))
          << name;
      ASSERT_EQ(values(alg.adjunct(x)), oracle::adjunct(f, alg.n(), alg.lambda().value, values(x))) << name;
    }
  }
}

TEST(Algebra, RingAxioms) {
  tdga::ShakeRng rng(32);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 1000; ++i) {
      const Element x = alg.sample_full(rng), y = alg.sample_full(rng), z = alg.sample_full(rng);
      ASSERT_EQ(alg.mul(alg.mul(x, y), z), alg.mul(x, alg.mul(y, z))) << name;
      ASSERT_EQ(alg.mul(x, alg.add(y, z)), alg.add(alg.mul(x, y), alg.mul(x, z))) << name;
      ASSERT_EQ(alg.mul(alg.add(x, y), z), alg.add(alg.mul(x, z), alg.mul(y, z))) << name;
      ASSERT_EQ(alg.mul(alg.one(), x), x);
      ASSERT_EQ(alg.mul(x, alg.one()), x);
    }
}

TEST(Algebra, RotationPartCommutes) {
  tdga::ShakeRng rng(33);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 1000; ++i) {
      const Element x = alg.sample_rotation(rng), y = alg.sample_rotation(rng);
      ASSERT_EQ(alg.mul(x, y), alg.mul(y, x)) << name;
    }
}

TEST(Algebra, GammaCommutesWithAdjunct) {
  tdga::ShakeRng rng(34);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 1000; ++i) {
      const Element g1 = alg.sample_gamma(rng), g2 = alg.sample_gamma(rng);
      ASSERT_EQ(alg.mul(g1, alg.adjunct(g2)), alg.mul(g2, alg.adjunct(g1))) << name;
    }
}

TEST(Algebra, GeneralReflectionElementsDoNotCommuteThatWay) {
  // Outside Gamma the identity fails, which is why secrets live in Gamma.
  tdga::ShakeRng rng(35);
  const Algebra alg = algebras()[1].alg;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const Element g1 = alg.sample_reflection(rng), g2 = alg.sample_reflection(rng);
    failures += alg.mul(g1, alg.adjunct(g2)) != alg.mul(g2, alg.adjunct(g1));
  }
  EXPECT_GT(failures, 100);
}

TEST(Algebra, SubspaceClosure) {
  tdga::ShakeRng rng(36);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 300; ++i) {
      const Element r1 = alg.sample_rotation(rng), r2 = alg.sample_rotation(rng);
      const Element s1 = alg.sample_reflection(rng), s2 = alg.sample_reflection(rng);
      ASSERT_TRUE(alg.in_rotation_part(alg.mul(r1, r2)));
      ASSERT_TRUE(alg.in_rotation_part(alg.mul(s1, s2)));
      ASSERT_TRUE(alg.in_reflection_part(alg.mul(r1, s1)));
      ASSERT_TRUE(alg.in_reflection_part(alg.mul(s1, r1)));
      ASSERT_TRUE(alg.in_rotation_part(alg.adjunct(r1)));
      ASSERT_TRUE(alg.in_reflection_part(alg.adjunct(s1)));
    }
}

TEST(Algebra, AdjunctIsAnAntiIsomorphismOntoInverseCocycle) {
  tdga::ShakeRng rng(37);
  for (const auto& [name, alg] : algebras()) {
    const Algebra inv(alg.field(), alg.group(), alg.field().inv(alg.lambda()));
    for (int i = 0; i < 1000; ++i) {
      const Element x = alg.sample_full(rng), y = alg.sample_full(rng);
      ASSERT_EQ(alg.adjunct(alg.mul(x, y)), inv.mul(alg.adjunct(y), alg.adjunct(x))) << name;
    }
  }
}

TEST(Algebra, AdjunctTwiceExhaustiveSmall) {
  const Algebra alg = f3n3();
  const Fe l2 = alg.field().mul(alg.lambda(), alg.lambda());
  for (std::uint64_t k = 0; k < 729; ++k) {
    const Element x = alg.index_h_inv(k);
    const Element twice = alg.adjunct(alg.adjunct(x));
    const Element expected = alg.add(alg.rotation_part(x), alg.scale(l2, alg.reflection_part(x)));
    ASSERT_EQ(twice, expected) << k;
  }
}

TEST(Algebra, GammaIsSelfAdjoint) {
  for (const auto& [name, alg] : algebras()) {
    if (alg.gamma_count() > 100000) continue;
    std::set<std::vector<std::uint64_t>> gamma, image;
    for (std::uint64_t k = 0; k < alg.gamma_count(); ++k) {
      const Element g = alg.gamma_at(k);
      gamma.insert(values(g));
      const Element adj = alg.adjunct(g);
      ASSERT_EQ(adj, alg.scale(alg.lambda(), g)) << name;
      image.insert(values(adj));
    }
    EXPECT_EQ(gamma, image) << name;
  }
}

TEST(Algebra, PhiIdentitiesOnGamma) {
  tdga::ShakeRng rng(38);
  for (const auto& [name, alg] : algebras()) {
    const Element y = alg.basis(alg.n());
    for (int i = 0; i < 1000; ++i) {
      const Element a = alg.sample_gamma(rng), b = alg.sample_gamma(rng);
      const Element pa = alg.phi(a), pb = alg.phi(b);
      // a = phi(a) y = y phi(a)
      ASSERT_EQ(alg.mul(pa, y), a) << name;
      ASSERT_EQ(alg.mul(y, pa), a) << name;
      // phi(a) is fixed by the adjunct
      ASSERT_EQ(alg.adjunct(pa), pa) << name;
      // (phi(a) y)^ = y^ phi(a) = lambda a
      ASSERT_EQ(alg.adjunct(alg.mul(pa, y)), alg.mul(alg.adjunct(y), pa)) << name;
      ASSERT_EQ(alg.adjunct(alg.mul(pa, y)), alg.scale(alg.lambda(), a)) << name;
      // phi(a) phi(b) = phi(b) phi(a), also for general reflection elements
      ASSERT_EQ(alg.mul(pa, pb), alg.mul(pb, pa)) << name;
      const Element c = alg.sample_reflection(rng), d = alg.sample_reflection(rng);
      ASSERT_EQ(alg.mul(alg.phi(c), alg.phi(d)), alg.mul(alg.phi(d), alg.phi(c))) << name;
    }
  }
}

TEST(Algebra, GammaMembershipIffPhiIsSelfAdjunct) {
  tdga::ShakeRng rng(39);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 1000; ++i) {
      const Element a = i % 2 ? alg.sample_gamma(rng) : alg.sample_reflection(rng);
      const Element pa = alg.phi(a);
      ASSERT_EQ(alg.in_gamma(a), alg.adjunct(pa) == pa) << name;
    }
}

TEST(Algebra, GammaCardinality) {
  for (std::uint32_t n : {3u, 4u}) {
    const Algebra alg = Algebra::without_order_check(Field::prime(3), DihedralGroup(n), Fe{2});
    const std::uint64_t expected = n == 3 ? 9 : 27;
    EXPECT_EQ(alg.gamma_count(), expected);

    // brute force over the whole reflection part
    std::uint64_t symmetric = 0;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t k = 0; k < total; ++k) symmetric += alg.in_gamma(alg.phi_inv(alg.index_h_inv(k)));
    EXPECT_EQ(symmetric, expected);

    // the sampler's support
    tdga::ShakeRng rng(40 + n);
    std::set<std::vector<std::uint64_t>> seen;
    for (int i = 0; i < 3000; ++i) {
      const Element g = alg.sample_gamma(rng);
      ASSERT_TRUE(alg.in_gamma(g));
      seen.insert(values(g));
    }
    EXPECT_EQ(seen.size(), expected);
  }
}

TEST(Algebra, SamplersRespectSubspaces) {
  tdga::ShakeRng rng(41);
  for (const auto& [name, alg] : algebras())
    for (int i = 0; i < 300; ++i) {
      EXPECT_TRUE(alg.in_rotation_part(alg.sample_rotation(rng)));
      EXPECT_TRUE(alg.in_reflection_part(alg.sample_reflection(rng)));
      const Element h = alg.sample_h(rng);
      EXPECT_FALSE(alg.is_zero(alg.rotation_part(h)));
      EXPECT_FALSE(alg.is_zero(alg.reflection_part(h)));
      const auto s = alg.sample_secret(rng);
      EXPECT_TRUE(alg.in_rotation_part(s.a) && !alg.is_zero(s.a));
      EXPECT_TRUE(alg.in_gamma(s.gamma) && !alg.is_zero(s.gamma));
    }
}

TEST(IndexH, Examples) {
  const Algebra a = f3n3();
  EXPECT_EQ(a.index_h(a.from_ints({1, 0, 0, 0, 0, 0})), 1);
  EXPECT_EQ(a.index_h(a.from_ints({0, 2, 0, 0, 0, 0})), 6);
  EXPECT_EQ(a.index_h(a.zero()), 0);
  EXPECT_EQ(a.index_h(a.from_ints({0, 0, 0, 0, 0, 1})), 243);
}

TEST(IndexH, RoundTripExhaustiveSmall) {
  const Algebra alg = f3n3();
  const auto f = testing_support::oracle_field(alg.field());
  for (std::uint64_t k = 0; k < 729; ++k) {
    const Element x = alg.index_h_inv(k);
    ASSERT_EQ(alg.index_h(x), k);
    ASSERT_EQ(alg.index_h_inv(tdga::IndexH(k)), x);
    ASSERT_EQ(static_cast<std::uint64_t>(oracle::index_h(f, values(x))), k);
  }
  EXPECT_THROW((void)alg.index_h_inv(std::uint64_t{729}), tdga::DomainError);
  EXPECT_THROW((void)alg.index_h_inv(tdga::IndexH(729)), tdga::DomainError);
  EXPECT_THROW((void)alg.index_h_inv(tdga::IndexH(-1)), tdga::DomainError);
}

TEST(IndexH, ExtensionFieldAgreesWithOracle) {
  const Algebra alg = algebras()[2].alg;  // q = 9, n = 9
  const auto f = testing_support::oracle_field(alg.field());
  tdga::ShakeRng rng(42);
  for (int i = 0; i < 200; ++i) {
    const Element x = alg.sample_full(rng);
    const auto v = oracle::index_h(f, values(x));
    ASSERT_EQ(alg.index_h(x), tdga::IndexH(static_cast<std::uint64_t>(v)));
    ASSERT_EQ(alg.index_h_inv(alg.index_h(x)), x);
  }
}

TEST(IndexH, BeyondSixtyFourBits) {
  // q^{2n} = 3^60 needs more than 64 bits
  const Algebra alg(Field::prime(3), DihedralGroup(30), Fe{2});
  tdga::ShakeRng rng(43);
  for (int i = 0; i < 100; ++i) {
    const Element x = alg.sample_full(rng);
    ASSERT_EQ(alg.index_h_inv(alg.index_h(x)), x);
  }
  Element top = alg.zero();
  top[59] = Fe{2};
  tdga::IndexH expected = 2;
  for (int i = 0; i < 59; ++i) expected *= 3;
  EXPECT_EQ(alg.index_h(top), expected);
}

TEST(Rep, FixedFormat) {
  const Algebra a = f3n3();
  EXPECT_EQ(a.rep(a.one()), (std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(a.rep_size(), 6u);
  const Algebra ext = algebras()[2].alg;
  EXPECT_EQ(ext.rep_size(), 18u * 2u);
  Element e = ext.zero();
  e[1] = Fe{1 + 2 * 3};  // digits 1, 2
  const auto bytes = ext.rep(e);
  EXPECT_EQ(bytes[2], 1);
  EXPECT_EQ(bytes[3], 2);
}

TEST(Rep, TwoByteDigits) {
  // 257 needs 9 bits per digit, so two bytes
  const Field f = Field::prime(257);
  const Algebra a(f, DihedralGroup(257), Fe{3});
  ASSERT_EQ(a.digit_bytes(), 2u);
  ASSERT_EQ(a.rep_size(), 2u * 514u);
  Element e = a.zero();
  e[0] = Fe{256};
  e[513] = Fe{1};
  const auto bytes = a.rep(e);
  EXPECT_EQ(bytes[0], 0x01);
  EXPECT_EQ(bytes[1], 0x00);
  EXPECT_EQ(bytes[1026], 0x00);
  EXPECT_EQ(bytes[1027], 0x01);
  EXPECT_EQ(a.from_rep(bytes), e);
}

TEST(Rep, RoundTripAndInjective) {
  tdga::ShakeRng rng(44);
  for (const auto& [name, alg] : algebras()) {
    std::set<std::vector<std::uint8_t>> seen;
    std::set<std::vector<std::uint64_t>> elements;
    for (int i = 0; i < 500; ++i) {
      const Element x = alg.sample_full(rng);
      const auto r = alg.rep(x);
      ASSERT_EQ(r.size(), alg.rep_size());
      ASSERT_EQ(alg.from_rep(r), x);
      seen.insert(r);
      elements.insert(values(x));
    }
    EXPECT_EQ(seen.size(), elements.size());
  }
}

TEST(Rep, RejectsMalformedBytes) {
  const Algebra a = f3n3();
  EXPECT_THROW((void)a.from_rep(std::vector<std::uint8_t>(5)), tdga::ParameterError);
  EXPECT_THROW((void)a.from_rep(std::vector<std::uint8_t>{3, 0, 0, 0, 0, 0}), tdga::ParameterError);
}

TEST(Algebra, RejectsBadParameters) {
  auto fault = [](auto&& make) {
    try {
      make();
    } catch (const tdga::ParameterError& e) {
      return e.fault();
    }
    return tdga::ParamFault::malformed;
  };
  EXPECT_EQ(fault([] { Algebra(Field::prime(7), DihedralGroup(7), Fe{2}); }), tdga::ParamFault::square_lambda);
  EXPECT_EQ(fault([] { Algebra(Field::prime(5), DihedralGroup(3), Fe{2}); }),
            tdga::ParamFault::characteristic_not_dividing_order);
  EXPECT_EQ(fault([] { Algebra(Field::prime(3), DihedralGroup(3), Fe{0}); }), tdga::ParamFault::square_lambda);
  const Algebra a = f3n3();
  EXPECT_THROW((void)a.add(a.one(), Element{}), tdga::DomainError);
  EXPECT_THROW((void)a.mul(a.one(), Element{}), tdga::DomainError);
}
