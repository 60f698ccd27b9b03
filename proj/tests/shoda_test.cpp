#include <gtest/gtest.h>

#include "qga/algebra.hpp"
#include "support.hpp"

namespace qga {
namespace {

using testing::first_of_order;

TEST(Epsilon, KK) {
  const auto d8 = build_family("dihedral:8");
  for (const auto& k : subgroups(d8))
    if (is_normal(k)) EXPECT_EQ(epsilon(k, k), hat(k));
}

TEST(Epsilon, CyclicFour) {
  const auto c4 = build_family("cyclic:4");
  const Elem a2 = first_of_order(c4, 2);
  const AlgElement expect(c4, {{0, Rational(1, 2)}, {a2, Rational(-1, 2)}});
  EXPECT_EQ(epsilon(whole_group(c4), trivial_subgroup(c4)), expect);
}

TEST(Epsilon, Klein) {
  const auto v = build_family("product:cyclic:2*cyclic:2");
  AlgElement expect = AlgElement::one(v);
  for (Elem x = 1; x < 4; ++x) expect = expect * (AlgElement::one(v) - hat(cyclic_subgroup(v, x)));
  const AlgElement e = epsilon(whole_group(v), trivial_subgroup(v));
  EXPECT_EQ(e, expect);
  EXPECT_TRUE(is_idempotent(e));
  EXPECT_TRUE(e.is_zero());
}

TEST(ShodaPairs, Examples) {
  const auto c6 = build_family("cyclic:6");
  EXPECT_TRUE(is_shoda_pair(whole_group(c6), whole_group(c6)));
  EXPECT_TRUE(is_strong_shoda_pair(whole_group(c6), whole_group(c6)));
  const auto q8 = build_family("quaternion:8");
  const Subgroup i = cyclic_subgroup(q8, first_of_order(q8, 4));
  EXPECT_TRUE(is_shoda_pair(i, trivial_subgroup(q8)));
  EXPECT_TRUE(is_strong_shoda_pair(i, trivial_subgroup(q8)));
}

TEST(ShodaPairs, DihedralRecordedFixtures) {
  const auto d8 = build_family("dihedral:8");
  const Elem a = first_of_order(d8, 4);
  const Subgroup A = cyclic_subgroup(d8, a);
  const Subgroup A2 = cyclic_subgroup(d8, d8->pow(a, 2));
  EXPECT_FALSE(is_strong_shoda_pair(A, A2));
  const auto rec = make_ssp_record(A, trivial_subgroup(d8));
  ASSERT_TRUE(rec);
  const AlgElement expect(d8, {{0, Rational(1, 2)}, {d8->pow(a, 2), Rational(-1, 2)}});
  EXPECT_EQ(rec->e, expect);
  EXPECT_EQ(rec->eps, rec->e);
  EXPECT_EQ(rec->stabilizer, rec->normalizer_of_K);
  EXPECT_EQ(rec->m(), 4u);
}

TEST(Search, CyclicFour) {
  const auto c4 = build_family("cyclic:4");
  const auto s = strong_shoda_pairs(c4);
  EXPECT_EQ(s.records.size(), 3u);
  EXPECT_TRUE(s.complete);
  AlgElement sum = AlgElement::zero(c4);
  for (const auto& r : s.records) sum = sum + r.e;
  EXPECT_EQ(sum, AlgElement::one(c4));
}

TEST(Search, QuaternionEight) {
  const auto q8 = build_family("quaternion:8");
  const auto s = strong_shoda_pairs(q8);
  ASSERT_EQ(s.records.size(), 5u);
  EXPECT_TRUE(s.complete);
  std::size_t linear = 0;
  for (const auto& r : s.records) {
    EXPECT_TRUE(is_central(r.e));
    EXPECT_TRUE(is_idempotent(r.e));
    linear += qdimension(r.e) == 1;
  }
  EXPECT_EQ(linear, 4u);
}

TEST(Search, RecordInvariants) {
  for (const char* spec : {"dihedral:16", "p1:3,2,1,4", "product:quaternion:8*cyclic:3"}) {
    const auto g = build_family(spec);
    const auto s = strong_shoda_pairs(g);
    EXPECT_TRUE(s.complete) << spec;
    EXPECT_EQ(s.records.size(), rational_class_count(g)) << spec;
    for (const auto& r : s.records) {
      EXPECT_TRUE(is_idempotent(r.eps));
      EXPECT_EQ(r.stabilizer, r.normalizer_of_K);
      AlgElement sum = AlgElement::zero(g);
      for (Elem t : r.transversal) sum = sum + conjugate(r.eps, t);
      EXPECT_EQ(sum, r.e);
    }
    for (const auto& c : s.collisions)
      EXPECT_TRUE(pairs_equivalent(c.H, c.K, s.records[c.record].H, s.records[c.record].K));
  }
}

TEST(Search, SmallestNonMonomialIsIncomplete) {
  const auto g = build_family("sl23");
  const auto s = strong_shoda_pairs(g);
  EXPECT_FALSE(s.complete);
  EXPECT_LT(s.records.size(), rational_class_count(g));
}

TEST(Combination, SmallestNonMonomial) {
  const auto g = build_family("sl23");
  const Elem x = g->generators().at(0);
  const Elem a = g->generators().at(2);
  ASSERT_EQ(g->elem_order(x), 4u);
  ASSERT_EQ(g->elem_order(a), 3u);
  const Subgroup B = cyclic_subgroup(g, g->mul(g->pow(x, 2), a));
  const Subgroup A = cyclic_subgroup(g, a);
  const Subgroup one = trivial_subgroup(g);
  EXPECT_TRUE(verify_central_idempotent_combination(g, {{Rational(1, 2), B, A}}));
  EXPECT_TRUE(verify_central_idempotent_combination(
      g, {{Rational(1, 4), B, one}, {Rational(-1, 4), B, A}}));
  EXPECT_TRUE(verify_central_idempotent_combination(
      g, {{Rational(1), whole_group(g), whole_group(g)}}));
}

}  // namespace
}  // namespace qga
