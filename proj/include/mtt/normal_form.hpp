#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>

#include "mtt/mode_theory.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

class RenameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NfNode;
struct NeNode;
struct NfTyNode;
using Nf = std::shared_ptr<const NfNode>;
using Ne = std::shared_ptr<const NeNode>;
using NfTy = std::shared_ptr<const NfTyNode>;

// β-normal, η-long forms. Binder structure mirrors the core syntax.
struct NfLam { Nf body; };
struct NfPair { Nf fst; Nf snd; };
struct NfTrue {};
struct NfFalse {};
struct NfRefl { Nf value; };
struct NfMkBox { Modality mod; Nf body; };
struct NfInj { Ne ne; };
struct NfPiCode { Modality mod; Nf dom; Nf cod; };
struct NfSigCode { Nf fst; Nf snd; };
struct NfBoolCode {};
struct NfModCode { Modality mod; Nf code; };
struct NfDown { CodeKind kind; Nf body; };

struct NeVar { std::size_t index; Cell cell; };
struct NeApp { Modality mod; Ne fn; Nf arg; };
struct NeFst { Ne pair; };
struct NeSnd { Ne pair; };
struct NeIf { NfTy motive; Ne scrut; Nf then_case; Nf else_case; };
struct NeJ { NfTy motive; Nf refl_case; Ne proof; };
struct NeCrispJ { Modality mod; NfTy motive; Nf refl_case; Ne proof; };
struct NeLetMod { Modality frame; Modality main; NfTy motive; Ne scrut; Nf body; };
struct NeUp { CodeKind kind; Ne body; };

struct NfPi { Modality mod; NfTy dom; NfTy cod; };
struct NfSig { NfTy fst; NfTy snd; };
struct NfBool {};
struct NfId { NfTy type; Nf lhs; Nf rhs; };
struct NfMod { Modality mod; NfTy body; };
struct NfUni {};
struct NfDec { Nf code; };

using NfVariant = std::variant<NfLam, NfPair, NfTrue, NfFalse, NfRefl, NfMkBox, NfInj, NfPiCode, NfSigCode,
                               NfBoolCode, NfModCode, NfDown>;
using NeVariant = std::variant<NeVar, NeApp, NeFst, NeSnd, NeIf, NeJ, NeCrispJ, NeLetMod, NeUp>;
using NfTyVariant = std::variant<NfPi, NfSig, NfBool, NfId, NfMod, NfUni, NfDec>;

struct NfNode { NfVariant node; };
struct NeNode { NeVariant node; };
struct NfTyNode { NfTyVariant node; };

template <typename T>
Nf make_nf(T node) { return std::make_shared<const NfNode>(NfNode{NfVariant(std::move(node))}); }
template <typename T>
Ne make_ne(T node) { return std::make_shared<const NeNode>(NeNode{NeVariant(std::move(node))}); }
template <typename T>
NfTy make_nfty(T node) { return std::make_shared<const NfTyNode>(NfTyNode{NfTyVariant(std::move(node))}); }

Tm decode_nf(const Nf& u);
Tm decode_ne(const Ne& e);
Ty decode_nfty(const NfTy& t);

bool nf_eq(const ModeTheory& theory, const Nf& a, const Nf& b);
bool ne_eq(const ModeTheory& theory, const Ne& a, const Ne& b);
bool nfty_eq(const ModeTheory& theory, const NfTy& a, const NfTy& b);

// Renamings. Written r : Δ → Γ, acting on things valid in Γ to give things
// valid in Δ.
struct RenNode;
using Ren = std::shared_ptr<const RenNode>;

struct EmpRen {};
struct WkRen {};
struct IRen {};
struct CompRen { Ren first; Ren second; };  // first acts, then second
struct LockRen { Modality mod; Ren inner; };
/// Key for β : ν ⇒ μ, moving the nearest ν-factor of the locks to μ.
struct KeyRen { Cell cell; };
/// Extension sending index 0 to `var`. An empty `var` stands for index 0 at its
/// own annotation with identity cell, which is what lifting under a binder needs.
struct ERen { Ren inner; std::optional<NeVar> var; };

using RenVariant = std::variant<EmpRen, WkRen, IRen, CompRen, LockRen, KeyRen, ERen>;
struct RenNode { RenVariant node; };

template <typename T>
Ren make_ren(T node) { return std::make_shared<const RenNode>(RenNode{RenVariant(std::move(node))}); }

Ren ren_id();
Ren ren_wk();
Ren ren_compose(Ren s, Ren r);
Ren ren_lock(const Modality& mu, Ren r);
Ren ren_key(const Cell& beta);
Ren ren_lift(Ren r);

Nf rename_nf(const ModeTheory& theory, const Ren& r, const Nf& u);
Ne rename_ne(const ModeTheory& theory, const Ren& r, const Ne& e);
NfTy rename_nfty(const ModeTheory& theory, const Ren& r, const NfTy& t);

}  // namespace mtt
