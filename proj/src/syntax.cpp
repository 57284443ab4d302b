#include "mtt/syntax.hpp"

#include <type_traits>

#include "overloaded.hpp"

namespace mtt {

const char* code_kind_name(CodeKind k) {
  switch (k) {
    case CodeKind::pi: return "pi";
    case CodeKind::sig: return "sig";
    case CodeKind::boolean: return "bool";
    case CodeKind::mod: return "mod";
  }
  return "?";
}

Ctx Ctx::lock(const ModeTheory& theory, const Modality& mu) const {
  if (!(mu.cod == mode_of(*this)))
    throw CompositionError("lock " + theory.format_mod(mu) + " does not start at mode " +
                           theory.mode_name(mode_of(*this)));
  Ctx out = *this;
  out.entries_.push_back({CtxEntry::Kind::lock, mu, nullptr});
  return out;
}

Ctx Ctx::ext(const ModeTheory& theory, const Modality& mu, Ty type) const {
  if (!(mu.cod == mode_of(*this)))
    throw CompositionError("binder annotation " + theory.format_mod(mu) + " does not start at mode " +
                           theory.mode_name(mode_of(*this)));
  Ctx out = *this;
  out.entries_.push_back({CtxEntry::Kind::bind, mu, std::move(type)});
  return out;
}

std::size_t Ctx::binder_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.kind == CtxEntry::Kind::bind;
  return n;
}

Mode mode_of(const Ctx& ctx) {
  Mode m = ctx.base_mode();
  for (const auto& e : ctx.entries()) {
    if (e.kind == CtxEntry::Kind::lock) m = e.mod.dom;
  }
  return m;
}

namespace {

// Position in entries() of binder k (0 = innermost), or throws.
std::size_t binder_position(const Ctx& ctx, std::size_t k) {
  const auto& es = ctx.entries();
  std::size_t seen = 0;
  for (std::size_t i = es.size(); i-- > 0;) {
    if (es[i].kind != CtxEntry::Kind::bind) continue;
    if (seen == k) return i;
    ++seen;
  }
  throw ScopeError("variable index " + std::to_string(k) + " out of range");
}

}  // namespace

Modality locks_of(const ModeTheory& theory, const Ctx& ctx, std::size_t k) {
  std::size_t pos = binder_position(ctx, k);
  const auto& es = ctx.entries();
  Mode m = ctx.base_mode();
  for (std::size_t i = 0; i <= pos; ++i)
    if (es[i].kind == CtxEntry::Kind::lock) m = es[i].mod.dom;
  Modality acc = theory.id_mod(m);
  for (std::size_t i = pos + 1; i < es.size(); ++i)
    if (es[i].kind == CtxEntry::Kind::lock) acc = theory.compose_mod(acc, es[i].mod);
  return acc;
}

std::pair<Modality, Ty> lookup(const Ctx& ctx, std::size_t k) {
  const auto& e = ctx.entries()[binder_position(ctx, k)];
  return {e.mod, e.type};
}

namespace {

struct Shifter {
  std::size_t by;

  Tm tm(const Tm& t, std::size_t c) const {
    if (!t) return t;
    return std::visit(
        overloaded{
            [&](const tm::Var& v) -> Tm {
              return make_tm(tm::Var{v.index >= c ? v.index + by : v.index, v.cell}, t->span);
            },
            [&](const tm::Lam& n) -> Tm { return make_tm(tm::Lam{tm(n.body, c + 1)}, t->span); },
            [&](const tm::App& n) -> Tm { return make_tm(tm::App{n.mod, tm(n.fn, c), tm(n.arg, c)}, t->span); },
            [&](const tm::Pair& n) -> Tm { return make_tm(tm::Pair{tm(n.fst, c), tm(n.snd, c)}, t->span); },
            [&](const tm::Fst& n) -> Tm { return make_tm(tm::Fst{tm(n.pair, c)}, t->span); },
            [&](const tm::Snd& n) -> Tm { return make_tm(tm::Snd{tm(n.pair, c)}, t->span); },
            [&](const tm::True&) -> Tm { return t; },
            [&](const tm::False&) -> Tm { return t; },
            [&](const tm::If& n) -> Tm {
              return make_tm(tm::If{ty(n.motive, c + 1), tm(n.then_case, c), tm(n.else_case, c), tm(n.scrut, c)},
                             t->span);
            },
            [&](const tm::Refl& n) -> Tm { return make_tm(tm::Refl{tm(n.value, c)}, t->span); },
            [&](const tm::J& n) -> Tm {
              return make_tm(tm::J{ty(n.motive, c + 3), tm(n.refl_case, c + 1), tm(n.proof, c)}, t->span);
            },
            [&](const tm::MkBox& n) -> Tm { return make_tm(tm::MkBox{n.mod, tm(n.body, c)}, t->span); },
            [&](const tm::LetMod& n) -> Tm {
              return make_tm(
                  tm::LetMod{n.frame, n.main, ty(n.motive, c + 1), tm(n.scrut, c), tm(n.body, c + 1)}, t->span);
            },
            [&](const tm::PiCode& n) -> Tm {
              return make_tm(tm::PiCode{n.mod, tm(n.dom, c), tm(n.cod, c + 1)}, t->span);
            },
            [&](const tm::SigCode& n) -> Tm { return make_tm(tm::SigCode{tm(n.fst, c), tm(n.snd, c + 1)}, t->span); },
            [&](const tm::BoolCode&) -> Tm { return t; },
            [&](const tm::ModCode& n) -> Tm { return make_tm(tm::ModCode{n.mod, tm(n.code, c)}, t->span); },
            [&](const tm::Up& n) -> Tm { return make_tm(tm::Up{n.kind, tm(n.body, c)}, t->span); },
            [&](const tm::Down& n) -> Tm { return make_tm(tm::Down{n.kind, tm(n.body, c)}, t->span); },
            [&](const tm::CrispJ& n) -> Tm {
              return make_tm(tm::CrispJ{n.mod, ty(n.motive, c + 3), tm(n.refl_case, c + 1), tm(n.proof, c)},
                             t->span);
            },
            [&](const tm::Ann& n) -> Tm { return make_tm(tm::Ann{tm(n.term, c), ty(n.type, c)}, t->span); },
        },
        t->node);
  }

  Ty ty(const Ty& a, std::size_t c) const {
    if (!a) return a;
    return std::visit(
        overloaded{
            [&](const ty::Pi& n) -> Ty { return make_ty(ty::Pi{n.mod, ty(n.dom, c), ty(n.cod, c + 1)}, a->span); },
            [&](const ty::Sig& n) -> Ty { return make_ty(ty::Sig{ty(n.fst, c), ty(n.snd, c + 1)}, a->span); },
            [&](const ty::Bool&) -> Ty { return a; },
            [&](const ty::Id& n) -> Ty {
              return make_ty(ty::Id{ty(n.type, c), tm(n.lhs, c), tm(n.rhs, c)}, a->span);
            },
            [&](const ty::Mod& n) -> Ty { return make_ty(ty::Mod{n.mod, ty(n.body, c)}, a->span); },
            [&](const ty::Uni&) -> Ty { return a; },
            [&](const ty::Dec& n) -> Ty { return make_ty(ty::Dec{tm(n.code, c)}, a->span); },
        },
        a->node);
  }
};

struct Equal {
  const ModeTheory& th;

  bool mod(const Modality& a, const Modality& b) const { return th.eq_mod(a, b); }

  bool tm(const Tm& a, const Tm& b) const {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b->node);
          if constexpr (std::is_same_v<T, tm::Var>) {
            if (x.index != y.index || x.cell.has_value() != y.cell.has_value()) return false;
            return !x.cell || th.eq_cell(*x.cell, *y.cell);
          } else if constexpr (std::is_same_v<T, tm::Lam>) {
            return tm(x.body, y.body);
          } else if constexpr (std::is_same_v<T, tm::App>) {
            return mod(x.mod, y.mod) && tm(x.fn, y.fn) && tm(x.arg, y.arg);
          } else if constexpr (std::is_same_v<T, tm::Pair>) {
            return tm(x.fst, y.fst) && tm(x.snd, y.snd);
          } else if constexpr (std::is_same_v<T, tm::Fst> || std::is_same_v<T, tm::Snd>) {
            return tm(x.pair, y.pair);
          } else if constexpr (std::is_same_v<T, tm::If>) {
            return ty(x.motive, y.motive) && tm(x.then_case, y.then_case) && tm(x.else_case, y.else_case) &&
                   tm(x.scrut, y.scrut);
          } else if constexpr (std::is_same_v<T, tm::Refl>) {
            return tm(x.value, y.value);
          } else if constexpr (std::is_same_v<T, tm::J>) {
            return ty(x.motive, y.motive) && tm(x.refl_case, y.refl_case) && tm(x.proof, y.proof);
          } else if constexpr (std::is_same_v<T, tm::MkBox>) {
            return mod(x.mod, y.mod) && tm(x.body, y.body);
          } else if constexpr (std::is_same_v<T, tm::LetMod>) {
            return mod(x.frame, y.frame) && mod(x.main, y.main) && ty(x.motive, y.motive) &&
                   tm(x.scrut, y.scrut) && tm(x.body, y.body);
          } else if constexpr (std::is_same_v<T, tm::PiCode>) {
            return mod(x.mod, y.mod) && tm(x.dom, y.dom) && tm(x.cod, y.cod);
          } else if constexpr (std::is_same_v<T, tm::SigCode>) {
            return tm(x.fst, y.fst) && tm(x.snd, y.snd);
          } else if constexpr (std::is_same_v<T, tm::ModCode>) {
            return mod(x.mod, y.mod) && tm(x.code, y.code);
          } else if constexpr (std::is_same_v<T, tm::Up> || std::is_same_v<T, tm::Down>) {
            return x.kind == y.kind && tm(x.body, y.body);
          } else if constexpr (std::is_same_v<T, tm::CrispJ>) {
            return mod(x.mod, y.mod) && ty(x.motive, y.motive) && tm(x.refl_case, y.refl_case) &&
                   tm(x.proof, y.proof);
          } else if constexpr (std::is_same_v<T, tm::Ann>) {
            return tm(x.term, y.term) && ty(x.type, y.type);
          } else {
            return true;
          }
        },
        a->node);
  }

  bool ty(const Ty& a, const Ty& b) const {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b->node);
          if constexpr (std::is_same_v<T, ty::Pi>) {
            return mod(x.mod, y.mod) && ty(x.dom, y.dom) && ty(x.cod, y.cod);
          } else if constexpr (std::is_same_v<T, ty::Sig>) {
            return ty(x.fst, y.fst) && ty(x.snd, y.snd);
          } else if constexpr (std::is_same_v<T, ty::Id>) {
            return ty(x.type, y.type) && tm(x.lhs, y.lhs) && tm(x.rhs, y.rhs);
          } else if constexpr (std::is_same_v<T, ty::Mod>) {
            return mod(x.mod, y.mod) && ty(x.body, y.body);
          } else if constexpr (std::is_same_v<T, ty::Dec>) {
            return tm(x.code, y.code);
          } else {
            return true;
          }
        },
        a->node);
  }
};

}  // namespace

Tm shift(const Tm& t, std::size_t by, std::size_t cutoff) { return by == 0 ? t : Shifter{by}.tm(t, cutoff); }
Ty shift(const Ty& t, std::size_t by, std::size_t cutoff) { return by == 0 ? t : Shifter{by}.ty(t, cutoff); }

bool tm_equal(const ModeTheory& theory, const Tm& a, const Tm& b) { return Equal{theory}.tm(a, b); }
bool ty_equal(const ModeTheory& theory, const Ty& a, const Ty& b) { return Equal{theory}.ty(a, b); }

}  // namespace mtt
