#include <gtest/gtest.h>

#include "qga/algebra.hpp"
#include "qga/errors.hpp"
#include "qga/zunits.hpp"
#include "support.hpp"

namespace qga {
namespace {

using testing::faithful_record;
using testing::first_of_order;

MatrixUnitSystem faithful_system(const char* spec, std::size_t h_order) {
  const auto rec = faithful_record(strong_shoda_pairs(build_family(spec)), h_order);
  if (!rec) throw std::runtime_error("no faithful record");
  return primitive_idempotents(*rec);
}

TEST(Bass, OrderFourExponentThreeIsSquare) {
  for (const char* spec : {"cyclic:4", "quaternion:8", "dihedral:8"}) {
    const auto g = build_family(spec);
    const Elem x = first_of_order(g, 4);
    const auto b = bass_unit(g, x, 3);
    EXPECT_EQ(b.u, AlgElement::basis(g, g->pow(x, 2))) << spec;
    EXPECT_TRUE(b.trivial);
    EXPECT_TRUE(certificate_holds(b));
  }
}

TEST(Bass, OrderFiveExponentTwo) {
  const auto g = build_family("cyclic:5");
  const Elem x = first_of_order(g, 5);
  const auto b = bass_unit(g, x, 2);
  const int coeffs[] = {-2, 1, 3, 1, -2};
  for (int j = 0; j < 5; ++j) EXPECT_EQ(b.u.coeff(g->pow(x, j)), Rational(coeffs[j]));
  EXPECT_TRUE(certificate_holds(b));
  EXPECT_FALSE(b.trivial);
}

TEST(Bass, Preconditions) {
  const auto g = build_family("cyclic:6");
  const Elem x = first_of_order(g, 6);
  EXPECT_THROW(bass_unit(g, x, 1), PreconditionError);
  EXPECT_THROW(bass_unit(g, x, 7), PreconditionError);
  EXPECT_THROW(bass_unit(g, x, 3), PreconditionError);
}

TEST(CentralBass, AbelianIsBass) {
  const auto g = build_family("cyclic:5");
  const Elem x = first_of_order(g, 5);
  EXPECT_EQ(central_bass_unit(g, x, 2).u, bass_unit(g, x, 2).u);
}

TEST(CentralBass, ClassTwo) {
  for (const char* spec : {"quaternion:8", "dihedral:8", "p1:2,3,1,5", "product:quaternion:8*cyclic:5"}) {
    const auto g = build_family(spec);
    std::size_t top = 0;
    for (Elem x = 0; x < g->order(); ++x) top = std::max(top, g->elem_order(x));
    const Elem x = first_of_order(g, top);
    const auto c = central_bass_unit(g, x, 3);
    EXPECT_TRUE(is_central(c.u)) << spec;
    EXPECT_TRUE(certificate_holds(c)) << spec;
    EXPECT_EQ(augmentation(c.u), Rational(1));
  }
}

TEST(CentralBass, BudgetEnforced) {
  const auto g = build_family("p1:2,3,1,5");
  const Elem x = first_of_order(g, 8);
  EXPECT_THROW(central_bass_unit(g, x, 3, 1), CapExceeded);
}

TEST(Bicyclic, Examples) {
  const auto g = build_family("dihedral:8");
  const Elem a = first_of_order(g, 4);
  Elem b = 0;
  for (Elem x = 1; x < 8; ++x)
    if (g->elem_order(x) == 2 && !is_normal(cyclic_subgroup(g, x))) b = x;
  const auto u = bicyclic_unit(g, b, a);
  EXPECT_NE(u.u, AlgElement::one(g));
  const AlgElement c = u.u - AlgElement::one(g);
  EXPECT_TRUE((c * c).is_zero());
  EXPECT_TRUE(certificate_holds(u));
  EXPECT_EQ(bicyclic_unit(g, a, a).u, AlgElement::one(g));
  EXPECT_EQ(bicyclic_unit(g, 0, a).u, AlgElement::one(g));
}

TEST(VUnits, DihedralEight) {
  const auto sys = faithful_system("dihedral:8", 4);
  const auto plus = v_generators(sys, Sign::plus);
  const auto minus = v_generators(sys, Sign::minus);
  ASSERT_FALSE(plus.empty());
  EXPECT_EQ(plus.size(), minus.size());
  for (const auto& u : plus) {
    const AlgElement c = u.u - AlgElement::one(sys.ssp.H.group());
    EXPECT_TRUE((c * c).is_zero());
    EXPECT_TRUE(certificate_holds(u));
    EXPECT_EQ(u.kind, UnitKind::VPlus);
  }
  EXPECT_TRUE(nilpotency_certificate(plus, sys));
  EXPECT_TRUE(nilpotency_certificate(minus, sys));
  EXPECT_TRUE(nilpotency_certificate({}, sys));
  std::vector<UnitCertificate> mixed{plus.front(), minus.front()};
  EXPECT_THROW(nilpotency_certificate(mixed, sys), PreconditionError);
}

TEST(VUnits, DivisionComponentIsEmpty) {
  const auto sys = faithful_system("quaternion:8", 4);
  EXPECT_TRUE(v_generators(sys, Sign::plus).empty());
  EXPECT_TRUE(v_generators(sys, Sign::minus).empty());
}

TEST(FreePairs, SanovImages) {
  for (const auto& [spec, h] : {std::pair{"dihedral:8", 4u}, std::pair{"product:quaternion:8*cyclic:5", 20u}}) {
    const auto sys = faithful_system(spec, h);
    const auto fp = free_pair(sys, 0, 1);
    const Rational n(static_cast<long>(sys.ssp.H.group()->order()));
    EXPECT_TRUE(fp.sanov) << spec;
    EXPECT_EQ(fp.image_first[0][1], n);
    EXPECT_EQ(fp.image_first[0][0], Rational(1));
    EXPECT_EQ(fp.image_first[1][0], Rational(0));
    EXPECT_EQ(fp.image_second[1][0], n);
    EXPECT_EQ(fp.image_second[0][1], Rational(0));
    EXPECT_TRUE(certificate_holds(fp.first));
    EXPECT_TRUE(certificate_holds(fp.second));
  }
}

TEST(FreePairs, DivisionComponentRejected) {
  const auto sys = faithful_system("quaternion:8", 4);
  EXPECT_THROW(free_pair(sys, 0, 1), PreconditionError);
  const auto d8 = faithful_system("dihedral:8", 4);
  EXPECT_THROW(free_pair(d8, 1, 1), PreconditionError);
}

TEST(Suite, DihedralEight) {
  const auto s = generator_suite(strong_shoda_pairs(build_family("dihedral:8")));
  for (const auto& c : s.central) EXPECT_TRUE(certificate_holds(c));
  std::size_t with_pair = 0;
  for (const auto& cu : s.components) {
    EXPECT_TRUE(cu.vplus_nilpotent);
    EXPECT_TRUE(cu.vminus_nilpotent);
    if (cu.free_pair) {
      ++with_pair;
      EXPECT_TRUE(cu.free_pair->sanov);
      EXPECT_TRUE(cu.descriptor.exceptional);
    }
  }
  EXPECT_EQ(with_pair, 1u);
}

}  // namespace
}  // namespace qga
