#include <algorithm>

#include "mtt/surface.hpp"
#include "overloaded.hpp"

namespace mtt {

namespace {

// Precedences: 0 binder forms extending to the right, 1 application-like, 2 atoms.
class Plain {
 public:
  Plain(const ModeTheory& th, const PrintNames& names) : th_(th), names_(names) {}

  std::string nf(const Nf& u, int prec, std::size_t d) const {
    return std::visit(
        overloaded{
            [&](const NfLam& n) { return wrap(0, prec, "\\" + name(d) + ". " + nf(n.body, 0, d + 1)); },
            [&](const NfPair& n) { return "(" + nf(n.fst, 0, d) + ", " + nf(n.snd, 0, d) + ")"; },
            [&](const NfTrue&) { return std::string("true"); },
            [&](const NfFalse&) { return std::string("false"); },
            [&](const NfRefl& n) { return wrap(1, prec, "refl " + nf(n.value, 2, d)); },
            [&](const NfMkBox& n) { return wrap(1, prec, modbox(n.mod) + " " + nf(n.body, 2, d)); },
            [&](const NfInj& n) { return ne(n.ne, prec, d); },
            [&](const NfPiCode& n) {
              return wrap(0, prec, "'(" + name(d) + " : " + nf(n.dom, 0, d) + ") ->" + arrow_mod(n.mod) + " " +
                                       nf(n.cod, 0, d + 1));
            },
            [&](const NfSigCode& n) {
              return wrap(0, prec, "'(" + name(d) + " : " + nf(n.fst, 0, d) + ") * " + nf(n.snd, 0, d + 1));
            },
            [&](const NfBoolCode&) { return std::string("'Bool"); },
            [&](const NfModCode& n) { return "'<" + th_.format_mod(n.mod) + "| " + nf(n.code, 0, d) + ">"; },
            [&](const NfDown& n) { return wrap(1, prec, "down " + nf(n.body, 2, d)); },
        },
        u->node);
  }

  std::string ne(const Ne& e, int prec, std::size_t d) const {
    return std::visit(
        overloaded{
            [&](const NeVar& n) {
              std::string s = name(d - 1 - n.index);
              if (!th_.is_identity_cell(n.cell)) s += "^" + th_.format_cell(n.cell);
              return s;
            },
            [&](const NeApp& n) {
              std::string sep = n.mod.is_identity() ? " " : " @" + app_mod(n.mod) + " ";
              return wrap(1, prec, ne(n.fn, 1, d) + sep + nf(n.arg, 2, d));
            },
            [&](const NeFst& n) { return wrap(1, prec, "fst " + ne(n.pair, 2, d)); },
            [&](const NeSnd& n) { return wrap(1, prec, "snd " + ne(n.pair, 2, d)); },
            [&](const NeIf& n) {
              return wrap(0, prec, "if " + ne(n.scrut, 1, d) + " return (" + name(d) + ". " + ty(n.motive, 0, d + 1) +
                                       ") then " + nf(n.then_case, 0, d) + " else " + nf(n.else_case, 0, d));
            },
            [&](const NeJ& n) {
              return wrap(1, prec, "J " + ne(n.proof, 2, d) + " (" + name(d) + ". " + nf(n.refl_case, 0, d + 1) +
                                       ")" + motive3(n.motive, d));
            },
            [&](const NeCrispJ& n) {
              return wrap(1, prec, "crispJ{" + th_.format_mod(n.mod) + "} " + ne(n.proof, 2, d) + " (" + name(d) +
                                       ". " + nf(n.refl_case, 0, d + 1) + ")" + motive3(n.motive, d));
            },
            [&](const NeLetMod& n) {
              std::string frame = n.frame.is_identity() ? "" : "{" + th_.format_mod(n.frame) + "}";
              return wrap(0, prec, "let" + frame + " " + modbox(n.main) + " " + name(d) + " = " + ne(n.scrut, 1, d) +
                                       " return (" + name(d) + ". " + ty(n.motive, 0, d + 1) + ") in " +
                                       nf(n.body, 0, d + 1));
            },
            [&](const NeUp& n) { return wrap(1, prec, "up " + ne(n.body, 2, d)); },
        },
        e->node);
  }

  std::string ty(const NfTy& t, int prec, std::size_t d) const {
    return std::visit(
        overloaded{
            [&](const NfPi& n) {
              return wrap(0, prec, "(" + name(d) + " : " + ty(n.dom, 0, d) + ") ->" + arrow_mod(n.mod) + " " +
                                       ty(n.cod, 0, d + 1));
            },
            [&](const NfSig& n) {
              return wrap(0, prec, "(" + name(d) + " : " + ty(n.fst, 0, d) + ") * " + ty(n.snd, 0, d + 1));
            },
            [&](const NfBool&) { return std::string("Bool"); },
            [&](const NfId& n) {
              return wrap(1, prec, "Id " + ty(n.type, 2, d) + " " + nf(n.lhs, 2, d) + " " + nf(n.rhs, 2, d));
            },
            [&](const NfMod& n) { return "<" + th_.format_mod(n.mod) + "| " + ty(n.body, 0, d) + ">"; },
            [&](const NfUni&) { return std::string("U"); },
            [&](const NfDec& n) { return wrap(1, prec, "Dec " + nf(n.code, 2, d)); },
        },
        t->node);
  }

 private:
  static std::string wrap(int level, int prec, std::string s) { return level < prec ? "(" + s + ")" : s; }

  std::string name(std::size_t level) const {
    if (level < names_.free.size()) return names_.free[level];
    return "x" + std::to_string(level - names_.free.size());
  }

  std::string motive3(const NfTy& m, std::size_t d) const {
    return " return (" + name(d) + " " + name(d + 1) + " " + name(d + 2) + ". " + ty(m, 0, d + 3) + ")";
  }

  std::string modbox(const Modality& mu) const {
    return mu.word.size() == 1 ? "mod_" + th_.format_mod(mu) : "mod{" + th_.format_mod(mu) + "}";
  }
  std::string app_mod(const Modality& mu) const {
    return mu.word.size() == 1 ? th_.format_mod(mu) : "{" + th_.format_mod(mu) + "}";
  }
  std::string arrow_mod(const Modality& mu) const {
    return mu.is_identity() ? "" : "{" + th_.format_mod(mu) + "}";
  }

  const ModeTheory& th_;
  const PrintNames& names_;
};

class Sexp {
 public:
  explicit Sexp(const ModeTheory& th) : th_(th) {}

  std::string nf(const Nf& u) const {
    return std::visit(
        overloaded{
            [&](const NfLam& n) { return "(lam " + nf(n.body) + ")"; },
            [&](const NfPair& n) { return "(pair " + nf(n.fst) + " " + nf(n.snd) + ")"; },
            [&](const NfTrue&) { return std::string("true"); },
            [&](const NfFalse&) { return std::string("false"); },
            [&](const NfRefl& n) { return "(refl " + nf(n.value) + ")"; },
            [&](const NfMkBox& n) { return "(mkbox " + mod(n.mod) + " " + nf(n.body) + ")"; },
            [&](const NfInj& n) { return ne(n.ne); },
            [&](const NfPiCode& n) { return "(picode " + mod(n.mod) + " " + nf(n.dom) + " " + nf(n.cod) + ")"; },
            [&](const NfSigCode& n) { return "(sigcode " + nf(n.fst) + " " + nf(n.snd) + ")"; },
            [&](const NfBoolCode&) { return std::string("boolcode"); },
            [&](const NfModCode& n) { return "(modcode " + mod(n.mod) + " " + nf(n.code) + ")"; },
            [&](const NfDown& n) { return std::string("(down ") + code_kind_name(n.kind) + " " + nf(n.body) + ")"; },
        },
        u->node);
  }

  std::string ne(const Ne& e) const {
    return std::visit(
        overloaded{
            [&](const NeVar& n) {
              std::string cell = th_.is_identity_cell(n.cell) ? "" : " " + th_.format_cell(n.cell);
              return "(var " + std::to_string(n.index) + cell + ")";
            },
            [&](const NeApp& n) { return "(app " + mod(n.mod) + " " + ne(n.fn) + " " + nf(n.arg) + ")"; },
            [&](const NeFst& n) { return "(fst " + ne(n.pair) + ")"; },
            [&](const NeSnd& n) { return "(snd " + ne(n.pair) + ")"; },
            [&](const NeIf& n) {
              return "(if " + ty(n.motive) + " " + ne(n.scrut) + " " + nf(n.then_case) + " " + nf(n.else_case) + ")";
            },
            [&](const NeJ& n) { return "(j " + ty(n.motive) + " " + nf(n.refl_case) + " " + ne(n.proof) + ")"; },
            [&](const NeCrispJ& n) {
              return "(crispj " + mod(n.mod) + " " + ty(n.motive) + " " + nf(n.refl_case) + " " + ne(n.proof) + ")";
            },
            [&](const NeLetMod& n) {
              return "(letmod " + mod(n.frame) + " " + mod(n.main) + " " + ty(n.motive) + " " + ne(n.scrut) + " " +
                     nf(n.body) + ")";
            },
            [&](const NeUp& n) { return std::string("(up ") + code_kind_name(n.kind) + " " + ne(n.body) + ")"; },
        },
        e->node);
  }

  std::string ty(const NfTy& t) const {
    return std::visit(
        overloaded{
            [&](const NfPi& n) { return "(pi " + mod(n.mod) + " " + ty(n.dom) + " " + ty(n.cod) + ")"; },
            [&](const NfSig& n) { return "(sig " + ty(n.fst) + " " + ty(n.snd) + ")"; },
            [&](const NfBool&) { return std::string("bool"); },
            [&](const NfId& n) { return "(id " + ty(n.type) + " " + nf(n.lhs) + " " + nf(n.rhs) + ")"; },
            [&](const NfMod& n) { return "(mod " + mod(n.mod) + " " + ty(n.body) + ")"; },
            [&](const NfUni&) { return std::string("U"); },
            [&](const NfDec& n) { return "(dec " + nf(n.code) + ")"; },
        },
        t->node);
  }

 private:
  std::string mod(const Modality& mu) const {
    return mu.word.size() > 1 ? "(" + th_.format_mod(mu) + ")" : th_.format_mod(mu);
  }

  const ModeTheory& th_;
};

std::size_t start(const PrintNames& names) { return std::max(names.free.size(), names.depth); }

}  // namespace

std::string format_nf(const ModeTheory& theory, const Nf& u, OutputStyle style, const PrintNames& names) {
  if (style == OutputStyle::sexp) return Sexp(theory).nf(u);
  return Plain(theory, names).nf(u, 0, start(names));
}

std::string format_ne(const ModeTheory& theory, const Ne& e, OutputStyle style, const PrintNames& names) {
  if (style == OutputStyle::sexp) return Sexp(theory).ne(e);
  return Plain(theory, names).ne(e, 0, start(names));
}

std::string format_nfty(const ModeTheory& theory, const NfTy& t, OutputStyle style, const PrintNames& names) {
  if (style == OutputStyle::sexp) return Sexp(theory).ty(t);
  return Plain(theory, names).ty(t, 0, start(names));
}

}  // namespace mtt
