#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "qga/errors.hpp"
#include "support.hpp"

namespace qga {
namespace {

using testing::first_of_order;
using testing::sub;

// Counts subsets that contain the identity and are closed under the product.
std::size_t brute_force_subgroup_count(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<bool> in(n, false);
    in[0] = true;
    for (std::size_t i = 1; i < n; ++i) in[i] = (mask >> (i - 1)) & 1u;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        if (in[a] && in[b] && !in[g->mul(a, b)]) closed = false;
    count += closed;
  }
  return count;
}

TEST(Families, QuaternionEightHasFiveClasses) {
  const auto q8 = build_family("quaternion:8");
  EXPECT_EQ(q8->order(), 8u);
  EXPECT_EQ(conjugacy_classes(q8).size(), 5u);
}

TEST(Families, TrivialGroup) {
  const auto g = build_family("cyclic:1");
  EXPECT_EQ(g->order(), 1u);
  EXPECT_EQ(rational_class_count(g), 1u);
}

TEST(Families, P1MaximalCyclic) {
  const auto g = build_family("p1:2,3,1,5");
  ASSERT_EQ(g->order(), 16u);
  const Elem a = first_of_order(g, 8);
  const Elem as[] = {a};
  const Subgroup c = centralizer_of(g, as);
  EXPECT_EQ(c, cyclic_subgroup(g, a));
  EXPECT_TRUE(is_normal(c));
}

TEST(Families, OrdersOfDerivedFamilies) {
  EXPECT_EQ(build_family("dihedral:16")->order(), 16u);
  EXPECT_EQ(build_family("p2:3,1,5")->order(), 32u);
  EXPECT_EQ(build_family("p3:3,0,1")->order(), 16u);
  EXPECT_EQ(build_family("product:quaternion:8*cyclic:7")->order(), 56u);
  EXPECT_EQ(build_family("sl23")->order(), 24u);
  EXPECT_EQ(build_family("perm:(1,2,3),(1,2)")->order(), 6u);
}

TEST(Families, MalformedSpecsAreRejected) {
  EXPECT_THROW(build_family("cyclic"), SpecError);
  EXPECT_THROW(build_family("cyclic:x"), SpecError);
  EXPECT_THROW(build_family("mystery:4"), SpecError);
  EXPECT_THROW(build_family("perm:(0,1)"), SpecError);
  EXPECT_THROW(build_family("table:/nonexistent/file"), SpecError);
}

TEST(Families, CapIsEnforced) {
  EXPECT_THROW(build_family("cyclic:300"), CapExceeded);
  EXPECT_NO_THROW(build_family("cyclic:300", 512));
}

TEST(Families, TableFile) {
  const std::string path = ::testing::TempDir() + "klein.txt";
  {
    std::ofstream f(path);
    f << "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
  }
  const auto g = build_family("table:" + path);
  EXPECT_EQ(g->order(), 4u);
  EXPECT_TRUE(g->is_abelian());
  {
    std::ofstream f(path);
    f << "2\n0 1\n0 1\n";
  }
  EXPECT_THROW(build_family("table:" + path), SpecError);
  std::remove(path.c_str());
}

TEST(Table, InverseRelation) {
  const auto g = build_family("dihedral:16");
  for (Elem x = 0; x < g->order(); ++x) EXPECT_EQ(g->mul(x, g->inv(x)), 0u);
}

TEST(Subgroups, CountsMatchSubsetSearch) {
  for (const char* spec : {"quaternion:8", "cyclic:4", "dihedral:8"}) {
    const auto g = build_family(spec);
    EXPECT_EQ(subgroups(g).size(), brute_force_subgroup_count(g)) << spec;
  }
  EXPECT_EQ(subgroups(build_family("quaternion:8")).size(), 6u);
  EXPECT_EQ(subgroups(build_family("cyclic:4")).size(), 3u);
  EXPECT_EQ(subgroups(build_family("dihedral:8")).size(), 10u);
}

TEST(Subgroups, NormalizerOfReflection) {
  const auto d8 = build_family("dihedral:8");
  Elem refl = 0;
  for (Elem x = 1; x < 8; ++x)
    if (d8->elem_order(x) == 2 && !is_normal(cyclic_subgroup(d8, x))) refl = x;
  ASSERT_NE(refl, 0u);
  EXPECT_EQ(normalizer(cyclic_subgroup(d8, refl)).order(), 4u);
  EXPECT_EQ(normalizer(whole_group(d8)), whole_group(d8));
}

TEST(Subgroups, QuaternionIsHamiltonian) {
  const auto q8 = build_family("quaternion:8");
  for (const auto& s : subgroups(q8)) EXPECT_TRUE(is_normal(s));
}

TEST(Quotients, CyclicFour) {
  const auto c4 = build_family("cyclic:4");
  const auto q = quotient(cyclic_subgroup(c4, first_of_order(c4, 2)));
  EXPECT_EQ(q.target->order(), 2u);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      EXPECT_EQ(q.projection[c4->mul(x, y)], q.target->mul(q.projection[x], q.projection[y]));
}

TEST(Quotients, QuaternionByCenterIsElementary) {
  const auto q8 = build_family("quaternion:8");
  const auto q = quotient(center(q8));
  ASSERT_EQ(q.target->order(), 4u);
  for (Elem x = 1; x < 4; ++x) EXPECT_EQ(q.target->elem_order(x), 2u);
  for (Elem x = 0; x < 8; ++x) EXPECT_EQ(q.projection[q.lift[q.projection[x]]], q.projection[x]);
}

TEST(Quotients, ByTrivialIsACopy) {
  const auto d8 = build_family("dihedral:8");
  const auto q = quotient(trivial_subgroup(d8));
  EXPECT_EQ(q.target->order(), 8u);
  EXPECT_EQ(conjugacy_classes(q.target).size(), 5u);
}

TEST(MinimalNormal, Examples) {
  const auto c4 = minimal_normal_subgroups(build_family("cyclic:4"));
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_EQ(c4[0].order(), 2u);
  const auto klein = minimal_normal_subgroups(build_family("product:cyclic:2*cyclic:2"));
  EXPECT_EQ(klein.size(), 3u);
  const auto q8g = build_family("quaternion:8");
  const auto q8 = minimal_normal_subgroups(q8g);
  ASSERT_EQ(q8.size(), 1u);
  EXPECT_EQ(q8[0], center(q8g));
}

TEST(Nilpotency, Examples) {
  const auto q8 = nilpotency_data(build_family("quaternion:8"));
  EXPECT_TRUE(q8.is_nilpotent);
  EXPECT_EQ(q8.nilpotency_class, 2u);
  EXPECT_EQ(q8.upper_central_series.at(0).order(), 2u);
  const auto c6 = build_family("cyclic:6");
  const auto ab = nilpotency_data(c6);
  EXPECT_EQ(ab.nilpotency_class, 1u);
  EXPECT_EQ(ab.upper_central_series.at(0), whole_group(c6));
  EXPECT_FALSE(nilpotency_data(build_family("perm:(1,2,3),(1,2)")).is_nilpotent);
  EXPECT_FALSE(nilpotency_data(build_family("sl23")).is_nilpotent);
}

TEST(RationalClasses, Examples) {
  EXPECT_EQ(rational_class_count(build_family("quaternion:8")), 5u);
  EXPECT_EQ(rational_class_count(build_family("cyclic:4")), 3u);
  EXPECT_EQ(rational_class_count(build_family("cyclic:7")), 2u);
  EXPECT_EQ(rational_class_count(build_family("sl23")), 5u);
}

TEST(Embedding, PullPushRoundTrip) {
  const auto d8 = build_family("dihedral:8");
  const Subgroup a = cyclic_subgroup(d8, first_of_order(d8, 4));
  const auto emb = subgroup_table(a);
  EXPECT_EQ(emb.table->order(), 4u);
  const Subgroup centre = center(d8);
  EXPECT_EQ(emb.push(emb.pull(centre)), centre);
}

}  // namespace
}  // namespace qga
