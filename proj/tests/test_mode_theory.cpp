#include <gtest/gtest.h>

#include "mtt/mode_theory.hpp"

namespace mtt {
namespace {

class Guarded : public ::testing::Test {
 protected:
  GuardedTheory th;
  Modality l(std::size_t n) const { return th.power(n); }
  Cell cell(std::size_t a, std::size_t b) const { return *th.find_cell(l(a), l(b)); }
};

TEST_F(Guarded, IdentityIsEmptyWordAndUnit) {
  Modality id = th.id_mod(Mode{0});
  EXPECT_TRUE(id.word.empty());
  EXPECT_TRUE(th.eq_mod(th.compose_mod(id, l(1)), l(1)));
  EXPECT_TRUE(th.eq_mod(th.compose_mod(l(1), id), l(1)));
}

TEST_F(Guarded, CompositionConcatenatesWords) {
  EXPECT_EQ(th.compose_mod(l(1), l(1)).word.size(), 2u);
  EXPECT_TRUE(th.eq_mod(th.compose_mod(th.compose_mod(l(1), l(1)), l(1)),
                        th.compose_mod(l(1), th.compose_mod(l(1), l(1)))));
  EXPECT_FALSE(th.eq_mod(l(1), l(2)));
}

TEST_F(Guarded, CellsExistExactlyWhenExponentGrows) {
  for (std::size_t a = 0; a <= 5; ++a)
    for (std::size_t b = 0; b <= 5; ++b) EXPECT_EQ(th.find_cell(l(a), l(b)).has_value(), a <= b) << a << "," << b;
  EXPECT_FALSE(th.find_cell(l(2), l(1)));
  EXPECT_TRUE(th.eq_cell(*th.find_cell(l(1), l(1)), th.id_cell(l(1))));
}

TEST_F(Guarded, VerticalAndHorizontalCompositionOfSpecCells) {
  Cell v = th.vcomp(cell(1, 2), cell(0, 1));
  EXPECT_TRUE(th.eq_cell(v, cell(0, 2)));
  Cell h = th.hcomp(th.id_cell(l(1)), cell(0, 1));
  EXPECT_TRUE(th.eq_cell(h, cell(1, 2)));
  EXPECT_TRUE(th.eq_cell(th.hcomp(th.id_cell(l(1)), th.id_cell(l(2))), th.id_cell(l(3))));
  EXPECT_EQ(th.format_cell(cell(0, 2)), "(0<=2)");
  EXPECT_EQ(th.format_cell(th.id_cell(l(2))), "id");
}

TEST_F(Guarded, CellsWithDifferentEndpointsDiffer) {
  EXPECT_FALSE(th.eq_cell(cell(0, 1), cell(0, 2)));
  EXPECT_FALSE(th.eq_cell(cell(0, 1), cell(1, 1)));
}

TEST_F(Guarded, MismatchedVerticalCompositionThrows) {
  EXPECT_THROW(th.vcomp(cell(2, 3), cell(0, 1)), CompositionError);
}

// Laws enumerated over every modality of length <= 3 and every cell between them.
TEST_F(Guarded, TwoCategoryLawsByEnumeration) {
  const std::size_t n = 3;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (std::size_t c = 0; c <= n; ++c) {
        EXPECT_TRUE(th.eq_mod(th.compose_mod(th.compose_mod(l(a), l(b)), l(c)),
                              th.compose_mod(l(a), th.compose_mod(l(b), l(c)))));
        if (a <= b && b <= c) {
          Cell x = cell(a, b), y = cell(b, c);
          EXPECT_TRUE(th.eq_cell(th.vcomp(y, x), cell(a, c)));
          EXPECT_TRUE(th.eq_cell(th.vcomp(th.id_cell(l(b)), x), x));
          EXPECT_TRUE(th.eq_cell(th.vcomp(x, th.id_cell(l(a))), x));
        }
      }
  // Interchange: (α' ∘ α) ⋆ (β' ∘ β) = (α' ⋆ β') ∘ (α ⋆ β).
  std::size_t checked = 0;
  for (std::size_t a0 = 0; a0 <= n; ++a0)
    for (std::size_t a1 = a0; a1 <= n; ++a1)
      for (std::size_t a2 = a1; a2 <= n; ++a2)
        for (std::size_t b0 = 0; b0 <= n; ++b0)
          for (std::size_t b1 = b0; b1 <= n; ++b1)
            for (std::size_t b2 = b1; b2 <= n; ++b2) {
              Cell al = cell(a0, a1), al2 = cell(a1, a2), be = cell(b0, b1), be2 = cell(b1, b2);
              Cell lhs = th.vcomp(th.hcomp(al2, be2), th.hcomp(al, be));
              Cell rhs = th.hcomp(th.vcomp(al2, al), th.vcomp(be2, be));
              EXPECT_TRUE(th.eq_cell(lhs, rhs));
              EXPECT_EQ(lhs.dom.word.size(), a0 + b0);
              EXPECT_EQ(lhs.cod.word.size(), a2 + b2);
              ++checked;
            }
  EXPECT_EQ(checked, 400u);  // (number of a0<=a1<=a2 in [0,3])^2 = 20^2
}

TEST(Walking, UnitAndIdentityCellsOnly) {
  WalkingTheory th;
  Modality mu = *th.generator("mu");
  Mode n = *th.mode_by_name("n"), m = *th.mode_by_name("m");
  EXPECT_EQ(mu.dom, n);
  EXPECT_EQ(mu.cod, m);
  EXPECT_TRUE(th.eq_mod(th.compose_mod(mu, th.id_mod(n)), mu));
  EXPECT_TRUE(th.eq_mod(th.compose_mod(th.id_mod(m), mu), mu));
  EXPECT_THROW(th.compose_mod(mu, mu), CompositionError);
  EXPECT_TRUE(th.eq_cell(th.vcomp(th.id_cell(mu), th.id_cell(mu)), th.id_cell(mu)));
  EXPECT_FALSE(th.find_cell(th.id_mod(n), th.id_mod(m)));
  EXPECT_FALSE(th.eq_mod(mu, th.id_mod(m)));
}

TEST(Trivial, OnlyIdentity) {
  TrivialTheory th;
  Modality id = th.id_mod(Mode{0});
  EXPECT_TRUE(th.eq_mod(id, id));
  EXPECT_TRUE(th.eq_cell(th.id_cell(id), *th.find_cell(id, id)));
  EXPECT_FALSE(th.generator("l"));
}

TEST(Instances, ByName) {
  EXPECT_EQ(make_mode_theory("guarded")->name(), "guarded");
  EXPECT_EQ(make_mode_theory("walking")->name(), "walking");
  EXPECT_EQ(make_mode_theory("trivial")->name(), "trivial");
  EXPECT_THROW(make_mode_theory("cubical"), InstanceError);
  TrivialTheory th;
  EXPECT_THROW(th.id_mod(Mode{3}), InstanceError);
}

}  // namespace
}  // namespace mtt
