#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mtt/mode_theory.hpp"

namespace mtt {

/// Byte range into a source file (line and column are 1-based).
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CodeKind { pi, sig, boolean, mod };
const char* code_kind_name(CodeKind k);

struct TmNode;
struct TyNode;
using Tm = std::shared_ptr<const TmNode>;
using Ty = std::shared_ptr<const TyNode>;

// Core terms, de Bruijn indexed. Binders are noted as (annotation | type);
// locks bind no variables. Fields marked "optional" may be left empty by the
// surface resolver and are filled in by the elaborating checker.
namespace tm {
struct Var { std::size_t index; std::optional<Cell> cell; };
struct Lam { Tm body; };
struct App { Modality mod; Tm fn; Tm arg; };  // arg under lock mod
struct Pair { Tm fst; Tm snd; };
struct Fst { Tm pair; };
struct Snd { Tm pair; };
struct True {};
struct False {};
struct If { Ty motive; Tm then_case; Tm else_case; Tm scrut; };  // motive under (id|Bool), optional
struct Refl { Tm value; };
// motive under (id|A).(id|A).(id|Id A x0 x1); refl_case under (id|A)
struct J { Ty motive; Tm refl_case; Tm proof; };
struct MkBox { Modality mod; Tm body; };
// scrut under lock frame; motive under (frame | Mod main A); body under (frame∘main | A)
struct LetMod { Modality frame; Modality main; Ty motive; Tm scrut; Tm body; };
struct PiCode { Modality mod; Tm dom; Tm cod; };  // dom under lock mod, cod under (mod | Dec dom)
struct SigCode { Tm fst; Tm snd; };               // snd under (id | Dec fst)
struct BoolCode {};
struct ModCode { Modality mod; Tm code; };
struct Up { std::optional<CodeKind> kind; Tm body; };
struct Down { std::optional<CodeKind> kind; Tm body; };
// proof under lock mod; motive under (mod|A).(mod|A).(mod|Id A x0 x1); refl_case under (mod|A)
struct CrispJ { Modality mod; Ty motive; Tm refl_case; Tm proof; };
struct Ann { Tm term; Ty type; };
}  // namespace tm

namespace ty {
struct Pi { Modality mod; Ty dom; Ty cod; };  // dom under lock mod, cod under (mod | dom)
struct Sig { Ty fst; Ty snd; };              // snd under (id | fst)
struct Bool {};
struct Id { Ty type; Tm lhs; Tm rhs; };
struct Mod { Modality mod; Ty body; };       // body under lock mod
struct Uni {};
struct Dec { Tm code; };
}  // namespace ty

using TmVariant = std::variant<tm::Var, tm::Lam, tm::App, tm::Pair, tm::Fst, tm::Snd, tm::True, tm::False,
                               tm::If, tm::Refl, tm::J, tm::MkBox, tm::LetMod, tm::PiCode, tm::SigCode,
                               tm::BoolCode, tm::ModCode, tm::Up, tm::Down, tm::CrispJ, tm::Ann>;
using TyVariant = std::variant<ty::Pi, ty::Sig, ty::Bool, ty::Id, ty::Mod, ty::Uni, ty::Dec>;

struct TmNode {
  TmVariant node;
  Span span{};
};

struct TyNode {
  TyVariant node;
  Span span{};
};

template <typename T>
Tm make_tm(T node, Span span = {}) {
  return std::make_shared<const TmNode>(TmNode{TmVariant(std::move(node)), span});
}
template <typename T>
Ty make_ty(T node, Span span = {}) {
  return std::make_shared<const TyNode>(TyNode{TyVariant(std::move(node)), span});
}

/// Context entry: a lock, or a binder (annotation | type).
struct CtxEntry {
  enum class Kind { lock, bind } kind;
  Modality mod;
  Ty type;  // null for locks
};

/// A context Empty(mode) followed by locks and annotated binders, oldest first.
class Ctx {
 public:
  explicit Ctx(Mode base) : base_(base) {}

  Ctx lock(const ModeTheory& theory, const Modality& mu) const;
  Ctx ext(const ModeTheory& theory, const Modality& mu, Ty type) const;

  Mode base_mode() const { return base_; }
  const std::vector<CtxEntry>& entries() const { return entries_; }
  std::size_t binder_count() const;

 private:
  Mode base_;
  std::vector<CtxEntry> entries_;
};

/// Composite of the locks between binder k and the end of the context.
Modality locks_of(const ModeTheory& theory, const Ctx& ctx, std::size_t k);
/// Annotation and stored type of binder k.
std::pair<Modality, Ty> lookup(const Ctx& ctx, std::size_t k);
Mode mode_of(const Ctx& ctx);

/// Weakening: adds `by` to every free index >= cutoff. Cells are unchanged
/// because binders introduce no locks.
Tm shift(const Tm& t, std::size_t by, std::size_t cutoff = 0);
Ty shift(const Ty& t, std::size_t by, std::size_t cutoff = 0);

/// Structural equality (modalities and cells compared by eq_mod / eq_cell).
bool tm_equal(const ModeTheory& theory, const Tm& a, const Tm& b);
bool ty_equal(const ModeTheory& theory, const Ty& a, const Ty& b);

}  // namespace mtt
