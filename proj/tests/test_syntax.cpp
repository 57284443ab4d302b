#include <gtest/gtest.h>

#include <random>

#include "mtt/syntax.hpp"

namespace mtt {
namespace {

Ty bool_ty() { return make_ty(ty::Bool{}); }

TEST(Syntax, LocksOfSingleAndComposite) {
  GuardedTheory th;
  Modality l = th.power(1), l2 = th.power(2);
  Ctx a = Ctx(Mode{0}).ext(th, l, bool_ty()).lock(th, l2);
  EXPECT_TRUE(th.eq_mod(locks_of(th, a, 0), l2));
  Ctx b = Ctx(Mode{0}).ext(th, th.id_mod(Mode{0}), bool_ty()).lock(th, l).lock(th, l2);
  EXPECT_TRUE(th.eq_mod(locks_of(th, b, 0), th.power(3)));
  Ctx c = Ctx(Mode{0}).ext(th, th.id_mod(Mode{0}), bool_ty());
  EXPECT_TRUE(locks_of(th, c, 0).is_identity());
}

TEST(Syntax, LocksOfWalkingCrossesModes) {
  WalkingTheory th;
  Modality mu = *th.generator("mu");
  Mode n = *th.mode_by_name("n"), m = *th.mode_by_name("m");
  Ctx g = Ctx(m).ext(th, th.id_mod(m), bool_ty()).lock(th, mu);
  EXPECT_EQ(mode_of(g), n);
  EXPECT_TRUE(th.eq_mod(locks_of(th, g, 0), mu));
  EXPECT_THROW(g.lock(th, mu), CompositionError);
}

TEST(Syntax, LookupSkipsLocks) {
  GuardedTheory th;
  Modality l = th.power(1);
  Ty a = make_ty(ty::Uni{});
  Ctx g = Ctx(Mode{0}).ext(th, l, a).ext(th, th.id_mod(Mode{0}), bool_ty()).lock(th, l);
  auto [m1, t1] = lookup(g, 1);
  EXPECT_TRUE(th.eq_mod(m1, l));
  EXPECT_EQ(t1, a);
  auto [m0, t0] = lookup(g, 0);
  EXPECT_TRUE(m0.is_identity());
  EXPECT_TRUE(std::holds_alternative<ty::Bool>(t0->node));
  EXPECT_EQ(g.binder_count(), 2u);
  EXPECT_THROW(lookup(g, 2), ScopeError);
  EXPECT_THROW(locks_of(th, g, 5), ScopeError);
}

TEST(Syntax, ModeOf) {
  WalkingTheory th;
  Mode n = *th.mode_by_name("n"), m = *th.mode_by_name("m");
  EXPECT_EQ(mode_of(Ctx(m)), m);
  EXPECT_EQ(mode_of(Ctx(m).lock(th, *th.generator("mu"))), n);
  EXPECT_EQ(mode_of(Ctx(m).ext(th, *th.generator("mu"), bool_ty())), m);
}

// Oracle: the lock composite is the concatenation of lock words after the binder.
TEST(Syntax, LocksOfAgreesWithWordConcatenation) {
  GuardedTheory th;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Ctx g(Mode{0});
    std::vector<std::pair<bool, std::size_t>> shape;  // (is_lock, power)
    int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      std::size_t p = rng() % 3;
      bool is_lock = i > 0 && rng() % 2;
      shape.push_back({is_lock, p});
      g = is_lock ? g.lock(th, th.power(p)) : g.ext(th, th.power(p), bool_ty());
    }
    std::size_t k = 0;
    for (std::size_t i = shape.size(); i-- > 0;) {
      if (shape[i].first) continue;
      std::size_t expect = 0;
      for (std::size_t j = i + 1; j < shape.size(); ++j)
        if (shape[j].first) expect += shape[j].second;
      EXPECT_EQ(locks_of(th, g, k).word.size(), expect);
      ++k;
    }
  }
}

TEST(Syntax, ShiftRespectsBinders) {
  GuardedTheory th;
  // \. (var 0) (var 1): only the free var 1 moves.
  Tm t = make_tm(tm::Lam{make_tm(tm::App{th.id_mod(Mode{0}), make_tm(tm::Var{0, std::nullopt}),
                                         make_tm(tm::Var{1, std::nullopt})})});
  Tm s = shift(t, 2);
  Tm expect = make_tm(tm::Lam{make_tm(tm::App{th.id_mod(Mode{0}), make_tm(tm::Var{0, std::nullopt}),
                                              make_tm(tm::Var{3, std::nullopt})})});
  EXPECT_TRUE(tm_equal(th, s, expect));
  EXPECT_FALSE(tm_equal(th, s, t));
  // J's refl case binds one variable, its motive three.
  Tm j = make_tm(tm::J{make_ty(ty::Id{bool_ty(), make_tm(tm::Var{3, std::nullopt}), make_tm(tm::True{})}),
                       make_tm(tm::Var{1, std::nullopt}), make_tm(tm::Var{0, std::nullopt})});
  Tm js = shift(j, 1);
  Tm jexpect = make_tm(tm::J{make_ty(ty::Id{bool_ty(), make_tm(tm::Var{4, std::nullopt}), make_tm(tm::True{})}),
                             make_tm(tm::Var{2, std::nullopt}), make_tm(tm::Var{1, std::nullopt})});
  EXPECT_TRUE(tm_equal(th, js, jexpect));
}

TEST(Syntax, CodeKindNames) {
  EXPECT_STREQ(code_kind_name(CodeKind::pi), "pi");
  EXPECT_STREQ(code_kind_name(CodeKind::sig), "sig");
  EXPECT_STREQ(code_kind_name(CodeKind::boolean), "bool");
  EXPECT_STREQ(code_kind_name(CodeKind::mod), "mod");
}

}  // namespace
}  // namespace mtt
