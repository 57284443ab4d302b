#include "mtt/normal_form.hpp"

#include <type_traits>

#include "overloaded.hpp"

namespace mtt {

// ---- decoding -------------------------------------------------------------

Tm decode_nf(const Nf& u) {
  return std::visit(
      overloaded{
          [](const NfLam& n) { return make_tm(tm::Lam{decode_nf(n.body)}); },
          [](const NfPair& n) { return make_tm(tm::Pair{decode_nf(n.fst), decode_nf(n.snd)}); },
          [](const NfTrue&) { return make_tm(tm::True{}); },
          [](const NfFalse&) { return make_tm(tm::False{}); },
          [](const NfRefl& n) { return make_tm(tm::Refl{decode_nf(n.value)}); },
          [](const NfMkBox& n) { return make_tm(tm::MkBox{n.mod, decode_nf(n.body)}); },
          [](const NfInj& n) { return decode_ne(n.ne); },
          [](const NfPiCode& n) { return make_tm(tm::PiCode{n.mod, decode_nf(n.dom), decode_nf(n.cod)}); },
          [](const NfSigCode& n) { return make_tm(tm::SigCode{decode_nf(n.fst), decode_nf(n.snd)}); },
          [](const NfBoolCode&) { return make_tm(tm::BoolCode{}); },
          [](const NfModCode& n) { return make_tm(tm::ModCode{n.mod, decode_nf(n.code)}); },
          [](const NfDown& n) { return make_tm(tm::Down{n.kind, decode_nf(n.body)}); },
      },
      u->node);
}

Tm decode_ne(const Ne& e) {
  return std::visit(
      overloaded{
          [](const NeVar& n) { return make_tm(tm::Var{n.index, n.cell}); },
          [](const NeApp& n) { return make_tm(tm::App{n.mod, decode_ne(n.fn), decode_nf(n.arg)}); },
          [](const NeFst& n) { return make_tm(tm::Fst{decode_ne(n.pair)}); },
          [](const NeSnd& n) { return make_tm(tm::Snd{decode_ne(n.pair)}); },
          [](const NeIf& n) {
            return make_tm(tm::If{decode_nfty(n.motive), decode_nf(n.then_case), decode_nf(n.else_case),
                                  decode_ne(n.scrut)});
          },
          [](const NeJ& n) {
            return make_tm(tm::J{decode_nfty(n.motive), decode_nf(n.refl_case), decode_ne(n.proof)});
          },
          [](const NeCrispJ& n) {
            return make_tm(tm::CrispJ{n.mod, decode_nfty(n.motive), decode_nf(n.refl_case), decode_ne(n.proof)});
          },
          [](const NeLetMod& n) {
            return make_tm(
                tm::LetMod{n.frame, n.main, decode_nfty(n.motive), decode_ne(n.scrut), decode_nf(n.body)});
          },
          [](const NeUp& n) { return make_tm(tm::Up{n.kind, decode_ne(n.body)}); },
      },
      e->node);
}

Ty decode_nfty(const NfTy& t) {
  return std::visit(
      overloaded{
          [](const NfPi& n) { return make_ty(ty::Pi{n.mod, decode_nfty(n.dom), decode_nfty(n.cod)}); },
          [](const NfSig& n) { return make_ty(ty::Sig{decode_nfty(n.fst), decode_nfty(n.snd)}); },
          [](const NfBool&) { return make_ty(ty::Bool{}); },
          [](const NfId& n) { return make_ty(ty::Id{decode_nfty(n.type), decode_nf(n.lhs), decode_nf(n.rhs)}); },
          [](const NfMod& n) { return make_ty(ty::Mod{n.mod, decode_nfty(n.body)}); },
          [](const NfUni&) { return make_ty(ty::Uni{}); },
          [](const NfDec& n) { return make_ty(ty::Dec{decode_nf(n.code)}); },
      },
      t->node);
}

// ---- equality -------------------------------------------------------------

namespace {

struct Eq {
  const ModeTheory& th;

  bool mod(const Modality& a, const Modality& b) const { return th.eq_mod(a, b); }

  bool nf(const Nf& a, const Nf& b) const {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b->node);
          if constexpr (std::is_same_v<T, NfLam>) return nf(x.body, y.body);
          else if constexpr (std::is_same_v<T, NfPair>) return nf(x.fst, y.fst) && nf(x.snd, y.snd);
          else if constexpr (std::is_same_v<T, NfRefl>) return nf(x.value, y.value);
          else if constexpr (std::is_same_v<T, NfMkBox>) return mod(x.mod, y.mod) && nf(x.body, y.body);
          else if constexpr (std::is_same_v<T, NfInj>) return ne(x.ne, y.ne);
          else if constexpr (std::is_same_v<T, NfPiCode>)
            return mod(x.mod, y.mod) && nf(x.dom, y.dom) && nf(x.cod, y.cod);
          else if constexpr (std::is_same_v<T, NfSigCode>) return nf(x.fst, y.fst) && nf(x.snd, y.snd);
          else if constexpr (std::is_same_v<T, NfModCode>) return mod(x.mod, y.mod) && nf(x.code, y.code);
          else if constexpr (std::is_same_v<T, NfDown>) return x.kind == y.kind && nf(x.body, y.body);
          else return true;
        },
        a->node);
  }

  bool ne(const Ne& a, const Ne& b) const {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b->node);
          if constexpr (std::is_same_v<T, NeVar>) return x.index == y.index && th.eq_cell(x.cell, y.cell);
          else if constexpr (std::is_same_v<T, NeApp>)
            return mod(x.mod, y.mod) && ne(x.fn, y.fn) && nf(x.arg, y.arg);
          else if constexpr (std::is_same_v<T, NeFst> || std::is_same_v<T, NeSnd>) return ne(x.pair, y.pair);
          else if constexpr (std::is_same_v<T, NeIf>)
            return ne(x.scrut, y.scrut) && nf(x.then_case, y.then_case) && nf(x.else_case, y.else_case) &&
                   ty(x.motive, y.motive);
          else if constexpr (std::is_same_v<T, NeJ>)
            return ne(x.proof, y.proof) && nf(x.refl_case, y.refl_case) && ty(x.motive, y.motive);
          else if constexpr (std::is_same_v<T, NeCrispJ>)
            return mod(x.mod, y.mod) && ne(x.proof, y.proof) && nf(x.refl_case, y.refl_case) &&
                   ty(x.motive, y.motive);
          else if constexpr (std::is_same_v<T, NeLetMod>)
            return mod(x.frame, y.frame) && mod(x.main, y.main) && ne(x.scrut, y.scrut) &&
                   nf(x.body, y.body) && ty(x.motive, y.motive);
          else return x.kind == y.kind && ne(x.body, y.body);
        },
        a->node);
  }

  bool ty(const NfTy& a, const NfTy& b) const {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b->node);
          if constexpr (std::is_same_v<T, NfPi>) return mod(x.mod, y.mod) && ty(x.dom, y.dom) && ty(x.cod, y.cod);
          else if constexpr (std::is_same_v<T, NfSig>) return ty(x.fst, y.fst) && ty(x.snd, y.snd);
          else if constexpr (std::is_same_v<T, NfId>)
            return ty(x.type, y.type) && nf(x.lhs, y.lhs) && nf(x.rhs, y.rhs);
          else if constexpr (std::is_same_v<T, NfMod>) return mod(x.mod, y.mod) && ty(x.body, y.body);
          else if constexpr (std::is_same_v<T, NfDec>) return nf(x.code, y.code);
          else return true;
        },
        a->node);
  }
};

}  // namespace

bool nf_eq(const ModeTheory& theory, const Nf& a, const Nf& b) { return Eq{theory}.nf(a, b); }
bool ne_eq(const ModeTheory& theory, const Ne& a, const Ne& b) { return Eq{theory}.ne(a, b); }
bool nfty_eq(const ModeTheory& theory, const NfTy& a, const NfTy& b) { return Eq{theory}.ty(a, b); }

// ---- renamings ------------------------------------------------------------

Ren ren_id() {
  static const Ren r = make_ren(IRen{});
  return r;
}
Ren ren_wk() {
  static const Ren r = make_ren(WkRen{});
  return r;
}
Ren ren_compose(Ren s, Ren r) { return make_ren(CompRen{std::move(r), std::move(s)}); }
Ren ren_lock(const Modality& mu, Ren r) { return make_ren(LockRen{mu, std::move(r)}); }
Ren ren_key(const Cell& beta) { return make_ren(KeyRen{beta}); }
Ren ren_lift(Ren r) { return make_ren(ERen{ren_compose(ren_wk(), std::move(r)), std::nullopt}); }

namespace {

struct Renamer {
  const ModeTheory& th;

  Modality compose(const Modality& a, const Modality& b) const {
    try {
      return th.compose_mod(a, b);
    } catch (const CompositionError& e) {
      throw RenameError(e.what());
    }
  }

  // ξ is the composite of the locks crossed so far, outermost first.
  NeVar var(const Ren& r, std::size_t k, const Cell& alpha, const Modality& xi) const {
    return std::visit(
        overloaded{
            [&](const EmpRen&) -> NeVar { throw RenameError("variable in the empty context"); },
            [&](const WkRen&) -> NeVar { return {k + 1, alpha}; },
            [&](const IRen&) -> NeVar { return {k, alpha}; },
            [&](const CompRen& c) -> NeVar {
              NeVar mid = var(c.first, k, alpha, xi);
              return var(c.second, mid.index, mid.cell, xi);
            },
            [&](const LockRen& l) -> NeVar { return var(l.inner, k, alpha, compose(l.mod, xi)); },
            [&](const KeyRen& key) -> NeVar {
              auto lambda = th.right_divide(alpha.cod, compose(key.cell.dom, xi));
              if (!lambda) throw RenameError("key does not match the locks of the variable");
              try {
                Cell whisker = th.hcomp(th.hcomp(th.id_cell(*lambda), key.cell), th.id_cell(xi));
                return {k, th.vcomp(whisker, alpha)};
              } catch (const CompositionError& e) {
                throw RenameError(e.what());
              }
            },
            [&](const ERen& e) -> NeVar {
              if (k > 0) return var(e.inner, k - 1, alpha, xi);
              if (!e.var) return {0, alpha};
              const Cell& gamma = e.var->cell;
              auto outer = th.right_divide(gamma.cod, alpha.dom);
              if (!outer) throw RenameError("substituted variable does not live under the binder annotation");
              try {
                return {e.var->index, th.vcomp(th.hcomp(th.id_cell(*outer), alpha), gamma)};
              } catch (const CompositionError& err) {
                throw RenameError(err.what());
              }
            },
        },
        r->node);
  }

  static Ren lift(const Ren& r, int n = 1) {
    Ren out = r;
    for (int i = 0; i < n; ++i) out = ren_lift(out);
    return out;
  }

  Nf nf(const Ren& r, const Nf& u) const {
    return std::visit(
        overloaded{
            [&](const NfLam& n) { return make_nf(NfLam{nf(lift(r), n.body)}); },
            [&](const NfPair& n) { return make_nf(NfPair{nf(r, n.fst), nf(r, n.snd)}); },
            [&](const NfTrue&) { return u; },
            [&](const NfFalse&) { return u; },
            [&](const NfRefl& n) { return make_nf(NfRefl{nf(r, n.value)}); },
            [&](const NfMkBox& n) { return make_nf(NfMkBox{n.mod, nf(ren_lock(n.mod, r), n.body)}); },
            [&](const NfInj& n) { return make_nf(NfInj{ne(r, n.ne)}); },
            [&](const NfPiCode& n) {
              return make_nf(NfPiCode{n.mod, nf(ren_lock(n.mod, r), n.dom), nf(lift(r), n.cod)});
            },
            [&](const NfSigCode& n) { return make_nf(NfSigCode{nf(r, n.fst), nf(lift(r), n.snd)}); },
            [&](const NfBoolCode&) { return u; },
            [&](const NfModCode& n) { return make_nf(NfModCode{n.mod, nf(ren_lock(n.mod, r), n.code)}); },
            [&](const NfDown& n) { return make_nf(NfDown{n.kind, nf(r, n.body)}); },
        },
        u->node);
  }

  Ne ne(const Ren& r, const Ne& e) const {
    return std::visit(
        overloaded{
            [&](const NeVar& n) {
              return make_ne(var(r, n.index, n.cell, th.id_mod(n.cell.cod.dom)));
            },
            [&](const NeApp& n) { return make_ne(NeApp{n.mod, ne(r, n.fn), nf(ren_lock(n.mod, r), n.arg)}); },
            [&](const NeFst& n) { return make_ne(NeFst{ne(r, n.pair)}); },
            [&](const NeSnd& n) { return make_ne(NeSnd{ne(r, n.pair)}); },
            [&](const NeIf& n) {
              return make_ne(NeIf{ty(lift(r), n.motive), ne(r, n.scrut), nf(r, n.then_case), nf(r, n.else_case)});
            },
            [&](const NeJ& n) {
              return make_ne(NeJ{ty(lift(r, 3), n.motive), nf(lift(r), n.refl_case), ne(r, n.proof)});
            },
            [&](const NeCrispJ& n) {
              return make_ne(NeCrispJ{n.mod, ty(lift(r, 3), n.motive), nf(lift(r), n.refl_case),
                                      ne(ren_lock(n.mod, r), n.proof)});
            },
            [&](const NeLetMod& n) {
              return make_ne(NeLetMod{n.frame, n.main, ty(lift(r), n.motive), ne(ren_lock(n.frame, r), n.scrut),
                                      nf(lift(r), n.body)});
            },
            [&](const NeUp& n) { return make_ne(NeUp{n.kind, ne(r, n.body)}); },
        },
        e->node);
  }

  NfTy ty(const Ren& r, const NfTy& t) const {
    return std::visit(
        overloaded{
            [&](const NfPi& n) {
              return make_nfty(NfPi{n.mod, ty(ren_lock(n.mod, r), n.dom), ty(lift(r), n.cod)});
            },
            [&](const NfSig& n) { return make_nfty(NfSig{ty(r, n.fst), ty(lift(r), n.snd)}); },
            [&](const NfBool&) { return t; },
            [&](const NfId& n) { return make_nfty(NfId{ty(r, n.type), nf(r, n.lhs), nf(r, n.rhs)}); },
            [&](const NfMod& n) { return make_nfty(NfMod{n.mod, ty(ren_lock(n.mod, r), n.body)}); },
            [&](const NfUni&) { return t; },
            [&](const NfDec& n) { return make_nfty(NfDec{nf(r, n.code)}); },
        },
        t->node);
  }
};

}  // namespace

Nf rename_nf(const ModeTheory& theory, const Ren& r, const Nf& u) { return Renamer{theory}.nf(r, u); }
Ne rename_ne(const ModeTheory& theory, const Ren& r, const Ne& e) { return Renamer{theory}.ne(r, e); }
NfTy rename_nfty(const ModeTheory& theory, const Ren& r, const NfTy& t) { return Renamer{theory}.ty(r, t); }

}  // namespace mtt
