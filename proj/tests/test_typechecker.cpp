#include <gtest/gtest.h>

#include "gen.hpp"
#include "mtt/surface.hpp"

namespace mtt {
namespace {

using namespace gen;

Tm tt() { return make_tm(tm::True{}); }
Tm ff() { return make_tm(tm::False{}); }
Ty bool_ty() { return make_ty(ty::Bool{}); }
Tm var(std::size_t i, std::optional<Cell> c = std::nullopt) { return make_tm(tm::Var{i, std::move(c)}); }

template <typename F>
std::optional<ErrorKind> error_of(F f) {
  try {
    f();
  } catch (const TypeError& e) {
    return e.kind;
  }
  return std::nullopt;
}

struct Fixture : ::testing::Test {
  std::shared_ptr<const ModeTheory> th = make_mode_theory("guarded");
  Checker ch{*th, true};
  Modality id = th->id_mod(th->default_mode());
  Modality l = *th->generator("l");
  ElabCtx empty = ch.empty_ctx();
  VTy vbool = make_value(VBool{});

  ElabCtx with(const ElabCtx& ctx, const Modality& mu, const Ty& a) const {
    return ctx.bind(ch.nbe(), mu, ch.check_ty(ctx.lock(mu), a).second);
  }
  bool is_bool(const VTy& a) const { return std::holds_alternative<VBool>(a->node); }
};

TEST_F(Fixture, CheckVar) {
  ElabCtx one = with(empty, id, bool_ty());
  EXPECT_TRUE(is_bool(ch.check_var(one, 0, th->id_cell(id)).second));

  ElabCtx locked = with(empty, l, bool_ty()).lock(l);
  EXPECT_TRUE(is_bool(ch.check_var(locked, 0, th->id_cell(l)).second));
  // Omitted cells are found: l ⇒ l l.
  ElabCtx twice = with(empty, l, bool_ty()).lock(l).lock(l);
  auto [cell, a] = ch.check_var(twice, 0, std::nullopt);
  EXPECT_EQ(cell.cod.word.size(), 2u);
  EXPECT_TRUE(is_bool(a));
  // No cell l ⇒ id.
  EXPECT_EQ(error_of([&] { ch.check_var(with(empty, l, bool_ty()), 0, std::nullopt); }), ErrorKind::no_such_cell);
  EXPECT_EQ(error_of([&] { ch.check_var(one, 3, std::nullopt); }), ErrorKind::scope);

  auto walking = make_mode_theory("walking");
  Checker wc(*walking, false);
  Modality mu = *walking->generator("mu");
  ElabCtx w = wc.empty_ctx();
  w = w.bind(wc.nbe(), mu, wc.check_ty(w.lock(mu), bool_ty()).second);
  EXPECT_TRUE(is_bool(wc.check_var(w.lock(mu), 0, walking->id_cell(mu)).second));
  EXPECT_EQ(error_of([&] { wc.check_var(w, 0, std::nullopt); }), ErrorKind::no_such_cell);
}

TEST_F(Fixture, Infer) {
  ElabCtx one = with(empty, id, bool_ty());
  EXPECT_TRUE(is_bool(ch.infer(one, var(0)).second));

  // f : (x : Bool) ->{l} Bool, x : Bool; the argument sits under a lock l.
  Ty arrow = make_ty(ty::Pi{l, bool_ty(), bool_ty()});
  ElabCtx ctx = with(with(empty, id, arrow), id, bool_ty());
  auto [app, a] = ch.infer(ctx, make_tm(tm::App{l, var(1), var(0)}));
  EXPECT_TRUE(is_bool(a));
  const auto& arg = std::get<tm::App>(app->node).arg;
  const auto& filled = std::get<tm::Var>(arg->node).cell;
  ASSERT_TRUE(filled);
  EXPECT_EQ(filled->dom.word.size(), 0u);
  EXPECT_EQ(filled->cod.word.size(), 1u);
  EXPECT_EQ(error_of([&] { ch.infer(ctx, make_tm(tm::App{id, var(1), var(0)})); }), ErrorKind::mode_mismatch);
  EXPECT_EQ(error_of([&] { ch.infer(ctx, make_tm(tm::App{id, var(0), var(0)})); }), ErrorKind::not_a_function);

  Tm pair = make_tm(tm::Pair{tt(), ff()});
  EXPECT_EQ(error_of([&] { ch.infer(empty, make_tm(tm::Fst{pair})); }), ErrorKind::cannot_infer);
  Ty prod = make_ty(ty::Sig{bool_ty(), bool_ty()});
  EXPECT_TRUE(is_bool(ch.infer(empty, make_tm(tm::Fst{make_tm(tm::Ann{pair, prod})})).second));
}

TEST_F(Fixture, Check) {
  VTy boxed = ch.check_ty(empty, make_ty(ty::Mod{l, bool_ty()})).second;
  EXPECT_NO_THROW(ch.check(empty, make_tm(tm::MkBox{l, tt()}), boxed));
  VTy arrow = ch.check_ty(empty, make_ty(ty::Pi{id, bool_ty(), bool_ty()})).second;
  EXPECT_NO_THROW(ch.check(empty, make_tm(tm::Lam{var(0, th->id_cell(id))}), arrow));
  auto k = error_of([&] { ch.check(empty, tt(), boxed); });
  ASSERT_TRUE(k);
  EXPECT_TRUE(*k == ErrorKind::conversion_failure || *k == ErrorKind::not_a_mod);
  EXPECT_EQ(error_of([&] { ch.check(empty, make_tm(tm::MkBox{l, make_tm(tm::Refl{tt()})}), boxed); }),
            ErrorKind::conversion_failure);
  VTy refl_ok = ch.check_ty(empty, make_ty(ty::Id{bool_ty(), tt(), tt()})).second;
  EXPECT_NO_THROW(ch.check(empty, make_tm(tm::Refl{tt()}), refl_ok));
  VTy refl_bad = ch.check_ty(empty, make_ty(ty::Id{bool_ty(), tt(), ff()})).second;
  EXPECT_EQ(error_of([&] { ch.check(empty, make_tm(tm::Refl{tt()}), refl_bad); }), ErrorKind::conversion_failure);
}

TEST_F(Fixture, CheckTy) {
  auto [ty, v] = ch.check_ty(empty, make_ty(ty::Mod{l, bool_ty()}));
  ASSERT_TRUE(std::holds_alternative<VMod>(v->node));
  EXPECT_TRUE(th->eq_mod(std::get<VMod>(v->node).mod, l));
  EXPECT_TRUE(is_bool(std::get<VMod>(v->node).body));

  // A Pi domain sits behind its lock: id ⇒ l lets it see b, but l-annotated
  // variables stay out of reach without one.
  ElabCtx b = with(empty, id, bool_ty());
  Ty dep = make_ty(ty::Pi{l, make_ty(ty::Id{bool_ty(), var(0), var(0)}), bool_ty()});
  EXPECT_EQ(error_of([&] { ch.check_ty(b, dep); }), std::nullopt);
  ElabCtx crisp = with(empty, l, bool_ty());
  Ty dep_l = make_ty(ty::Pi{id, make_ty(ty::Id{bool_ty(), var(0), var(0)}), bool_ty()});
  EXPECT_EQ(error_of([&] { ch.check_ty(crisp, dep_l); }), ErrorKind::no_such_cell);
  Ty cod = make_ty(ty::Pi{l, bool_ty(), make_ty(ty::Id{bool_ty(), var(0, th->id_cell(l)), tt()})});
  EXPECT_EQ(error_of([&] { ch.check_ty(empty, cod); }), ErrorKind::no_such_cell);

  auto k = error_of([&] { ch.check_ty(empty, make_ty(ty::Dec{tt()})); });
  ASSERT_TRUE(k);
  EXPECT_TRUE(*k == ErrorKind::universe || *k == ErrorKind::conversion_failure);
}

TEST_F(Fixture, Conversion) {
  VTy arrow = ch.check_ty(empty, make_ty(ty::Pi{id, bool_ty(), bool_ty()})).second;
  Cell c = th->id_cell(id);
  Tm m = ch.check(empty, make_tm(tm::Lam{var(0, c)}), arrow);
  Tm inner = make_tm(tm::App{id, make_tm(tm::Ann{make_tm(tm::Lam{var(0, c)}), make_ty(ty::Pi{id, bool_ty(), bool_ty()})}),
                             var(0, c)});
  Tm n = ch.check(empty, make_tm(tm::Lam{inner}), arrow);
  EXPECT_TRUE(ch.convertible_tm(empty, arrow, m, n));
  EXPECT_FALSE(ch.convertible_tm(empty, vbool, tt(), ff()));
  EXPECT_TRUE(ch.convertible_ty(empty, make_ty(ty::Mod{th->compose_mod(l, id), bool_ty()}), make_ty(ty::Mod{l, bool_ty()})));
  EXPECT_FALSE(ch.convertible_ty(empty, make_ty(ty::Mod{th->compose_mod(l, l), bool_ty()}), make_ty(ty::Mod{l, bool_ty()})));
}

TEST_F(Fixture, Programs) {
  Ty arrow = make_ty(ty::Pi{id, bool_ty(), bool_ty()});
  Decl ident{"id", arrow, make_tm(tm::Lam{var(0)}), {}};
  Decl two{"two", bool_ty(), make_tm(tm::App{id, var(0), tt()}), {}};
  auto [decls, ctx] = ch.check_program({ident, two});
  ASSERT_EQ(decls.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<NfTrue>(ch.nbe().reify(ctx.depth(), vbool, decls[1].value)->node));
  // Definitions unfold: two is true by evaluation.
  EXPECT_TRUE(ch.convertible_tm(ctx, vbool, var(0, th->id_cell(id)), tt()));

  EXPECT_EQ(error_of([&] { ch.check_program({two, ident}); }), ErrorKind::scope);
  EXPECT_EQ(error_of([&] { ch.check_program({ident, ident}); }), ErrorKind::duplicate);

  Checker plain(*th, false);
  Tm cj = make_tm(tm::CrispJ{id, bool_ty(), tt(), make_tm(tm::Ann{make_tm(tm::Refl{tt()}),
                                                                   make_ty(ty::Id{bool_ty(), tt(), tt()})})});
  EXPECT_EQ(error_of([&] { plain.infer(plain.empty_ctx(), cj); }), ErrorKind::crisp_disabled);
  EXPECT_NO_THROW(ch.infer(empty, cj));
}

// Normalizing and decoding yields a convertible term, deterministically.
TEST_F(Fixture, ConversionIsSoundOnDecodedNormalForms) {
  GCtx gctx = open_context(2);
  ElabCtx ctx = to_ctx(ch, gctx);
  TermGen g(43, Options{2, true, true, 4});
  for (int i = 0; i < 300; ++i) {
    GTyP ty = g.type(2);
    VTy a = ch.nbe().eval_ty(ctx.env(), to_ty(*th, ty));
    Tm src = to_tm(*th, g.term(gctx, ty, 4), ctx.depth());
    Tm m = ch.check(ctx, src, a);
    EXPECT_EQ(format_nf(*th, ch.nbe().reify(ctx.depth(), a, ch.nbe().eval(ctx.env(), ch.check(ctx, src, a))),
                        OutputStyle::sexp),
              format_nf(*th, ch.nbe().reify(ctx.depth(), a, ch.nbe().eval(ctx.env(), m)), OutputStyle::sexp));
    Tm d = ch.check(ctx, decode_nf(ch.nbe().reify(ctx.depth(), a, ch.nbe().eval(ctx.env(), m))), a);
    ASSERT_TRUE(ch.convertible_tm(ctx, a, m, d));
  }
}

// Pi types are equal iff their components are, over generated normal types.
TEST_F(Fixture, PiInjectivity) {
  TermGen g(47, Options{2, true, true, 3});
  std::vector<NfTy> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(ch.nbe().normalize_ty(Ctx(th->default_mode()), to_ty(*th, g.type(2))));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  int equal = 0;
  for (int i = 0; i < 400; ++i) {
    NfTy a0 = pool[pick(g.rng())], b0 = pool[pick(g.rng())];
    NfTy a1 = i % 3 == 0 ? a0 : pool[pick(g.rng())], b1 = i % 3 == 0 ? b0 : pool[pick(g.rng())];
    Modality mu = power(*th, static_cast<unsigned>(i % 3));
    bool whole = nfty_eq(*th, make_nfty(NfPi{mu, a0, b0}), make_nfty(NfPi{mu, a1, b1}));
    EXPECT_EQ(whole, nfty_eq(*th, a0, a1) && nfty_eq(*th, b0, b1));
    equal += whole;
  }
  EXPECT_GT(equal, 100);
}

// A simply typed bidirectional checker for the fragment Bool, ->, *, if.
namespace reference {

struct RTy;
using RTyP = std::shared_ptr<const RTy>;
struct RTy {
  enum class K { Bool, Arr, Prod } k;
  RTyP a, b;
};

struct Reject {};

RTyP of(const Ty& t) {
  if (std::holds_alternative<ty::Bool>(t->node)) return std::make_shared<RTy>(RTy{RTy::K::Bool, nullptr, nullptr});
  if (auto* p = std::get_if<ty::Pi>(&t->node)) {
    if (!p->mod.word.empty()) throw Reject{};
    return std::make_shared<RTy>(RTy{RTy::K::Arr, of(p->dom), of(p->cod)});
  }
  if (auto* s = std::get_if<ty::Sig>(&t->node)) return std::make_shared<RTy>(RTy{RTy::K::Prod, of(s->fst), of(s->snd)});
  throw Reject{};
}

bool same(const RTyP& x, const RTyP& y) {
  return x->k == y->k && (x->k == RTy::K::Bool || (same(x->a, y->a) && same(x->b, y->b)));
}

struct Checker {
  std::vector<RTyP> ctx;

  RTyP infer(const Tm& t) {
    if (auto* v = std::get_if<tm::Var>(&t->node)) {
      if (v->index >= ctx.size()) throw Reject{};
      return ctx[ctx.size() - 1 - v->index];
    }
    if (std::holds_alternative<tm::True>(t->node) || std::holds_alternative<tm::False>(t->node))
      return of(make_ty(ty::Bool{}));
    if (auto* a = std::get_if<tm::App>(&t->node)) {
      RTyP f = infer(a->fn);
      if (f->k != RTy::K::Arr) throw Reject{};
      check(a->arg, f->a);
      return f->b;
    }
    if (auto* p = std::get_if<tm::Fst>(&t->node)) {
      RTyP s = infer(p->pair);
      if (s->k != RTy::K::Prod) throw Reject{};
      return s->a;
    }
    if (auto* p = std::get_if<tm::Snd>(&t->node)) {
      RTyP s = infer(p->pair);
      if (s->k != RTy::K::Prod) throw Reject{};
      return s->b;
    }
    if (auto* n = std::get_if<tm::Ann>(&t->node)) {
      RTyP a = of(n->type);
      check(n->term, a);
      return a;
    }
    if (auto* i = std::get_if<tm::If>(&t->node); i && i->motive) {
      RTyP m = of(i->motive);
      check(i->scrut, of(make_ty(ty::Bool{})));
      check(i->then_case, m);
      check(i->else_case, m);
      return m;
    }
    throw Reject{};
  }

  void check(const Tm& t, const RTyP& a) {
    if (auto* l = std::get_if<tm::Lam>(&t->node)) {
      if (a->k != RTy::K::Arr) throw Reject{};
      ctx.push_back(a->a);
      check(l->body, a->b);
      ctx.pop_back();
      return;
    }
    if (auto* p = std::get_if<tm::Pair>(&t->node)) {
      if (a->k != RTy::K::Prod) throw Reject{};
      check(p->fst, a->a);
      check(p->snd, a->b);
      return;
    }
    if (auto* i = std::get_if<tm::If>(&t->node); i && !i->motive) {
      check(i->scrut, of(make_ty(ty::Bool{})));
      check(i->then_case, a);
      check(i->else_case, a);
      return;
    }
    // A redex in checking position: the argument is inferred.
    if (auto* ap = std::get_if<tm::App>(&t->node); ap && std::holds_alternative<tm::Lam>(ap->fn->node)) {
      RTyP dom = infer(ap->arg);
      ctx.push_back(dom);
      check(std::get<tm::Lam>(ap->fn->node).body, a);
      ctx.pop_back();
      return;
    }
    if (!same(infer(t), a)) throw Reject{};
  }
};

}  // namespace reference

TEST(Differential, TrivialTheoryMatchesSimplyTypedChecker) {
  struct Program {
    const char* term;
    const char* type;
    bool ok;  // labelled by hand
  };
  const std::vector<Program> programs = {
      {"true", "Bool", true},
      {"\\x. x", "Bool -> Bool", true},
      {"\\x y. x", "Bool -> Bool -> Bool", true},
      {"\\x y. y", "Bool -> Bool -> Bool", true},
      {"\\f x. f (f x)", "(Bool -> Bool) -> Bool -> Bool", true},
      {"\\p. (snd p, fst p)", "Bool * Bool -> Bool * Bool", true},
      {"\\b. if b then false else true", "Bool -> Bool", true},
      {"(true, (false, true))", "Bool * (Bool * Bool)", true},
      {"\\p. fst (snd p)", "Bool * (Bool * Bool) -> Bool", true},
      {"(\\x. x) true", "Bool", true},
      {"(\\f. f true) (\\x. x)", "Bool", false},
      {"\\f. (f, f)", "(Bool -> Bool) -> (Bool -> Bool) * (Bool -> Bool)", true},
      {"\\x. \\y. if x then y else false", "Bool -> Bool -> Bool", true},
      {"fst ((true, false) : Bool * Bool)", "Bool", true},
      {"fst (true, false)", "Bool", false},
      {"((\\x. x) : Bool -> Bool) false", "Bool", true},
      {"\\g. g (\\x. x)", "((Bool -> Bool) -> Bool) -> Bool", true},
      {"if true then (\\x. x) else (\\y. false)", "Bool -> Bool", true},
      {"true", "Bool -> Bool", false},
      {"\\x. x", "Bool", false},
      {"(true, false)", "Bool", false},
      {"\\x. (x, x)", "Bool -> Bool", false},
      {"\\p. fst p", "Bool -> Bool", false},
      {"\\f. f", "Bool -> Bool -> Bool", false},
      {"\\f. f true true", "(Bool -> Bool) -> Bool", false},
      {"if (\\x. x) then true else false", "Bool", false},
      {"\\b. if b then true else (false, false)", "Bool -> Bool", false},
      {"\\x y. x y", "Bool -> Bool -> Bool", false},
      {"(\\x. x) (true, false)", "Bool", false},
      {"\\p. (fst p, fst p)", "Bool * Bool -> Bool * Bool", true},
  };
  ASSERT_EQ(programs.size(), 30u);
  auto th = make_mode_theory("trivial");
  Checker ch(*th, false);
  Scope scope{th->default_mode(), {}};
  for (const auto& p : programs) {
    Tm t = resolve_tm(*th, scope, parse_term(p.term));
    Ty a = resolve_ty(*th, scope, parse_type(p.type));
    bool kernel = !error_of([&] { ch.check(ch.empty_ctx(), t, ch.check_ty(ch.empty_ctx(), a).second); });
    bool ref = true;
    try {
      reference::Checker rc;
      rc.check(t, reference::of(a));
    } catch (const reference::Reject&) {
      ref = false;
    }
    EXPECT_EQ(kernel, ref) << p.term << " : " << p.type;
    EXPECT_EQ(kernel, p.ok) << p.term << " : " << p.type;
  }
}

}  // namespace
}  // namespace mtt
