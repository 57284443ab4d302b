#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mtt/mode_theory.hpp"
#include "mtt/normal_form.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

/// A value was eliminated in a way its type rules out (ill-typed input).
class ImpossibleByTyping : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 2-cell does not fit the locks of the value it is applied to.
class CellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValueNode;
using Value = std::shared_ptr<const ValueNode>;
using VTy = Value;

struct EnvNode;

/// Persistent evaluation environment. Entries are values (with the annotation
/// of the binder they instantiate), lock markers, and pending keys. A key
/// (α, ξ) records that the lock ξ back from this point was moved along α.
class Env {
 public:
  explicit Env(Mode base) : mode_(base) {}

  Env push_val(Value v, const Modality& mu) const;
  Env push_lock(const Modality& mu) const;
  Env push_key(const Cell& alpha, const Modality& xi) const;

  Mode mode() const { return mode_; }
  std::size_t size() const;
  const std::shared_ptr<const EnvNode>& top() const { return top_; }

 private:
  Env(std::shared_ptr<const EnvNode> top, Mode mode) : top_(std::move(top)), mode_(mode) {}
  std::shared_ptr<const EnvNode> top_;
  Mode mode_;
};

struct EnvEntry {
  enum class Kind { val, lock, key } kind;
  Value value;  // val
  Modality mod;  // val: binder annotation; lock: the lock; key: ξ
  Cell cell;    // key
};

struct EnvNode {
  EnvEntry entry;
  std::shared_ptr<const EnvNode> prev;
  std::size_t size;
};

struct TmClosure { Env env; Tm body; };
struct TyClosure { Env env; Ty body; };

struct FApp { Modality mod; Value arg; VTy dom; };
struct FFst {};
struct FSnd {};
struct FIf { TyClosure motive; Value then_case; Value else_case; };
struct FJ { VTy type; TyClosure motive; TmClosure refl_case; };
struct FCrispJ { Modality mod; VTy type; TyClosure motive; TmClosure refl_case; };
struct FLetMod { Modality frame; Modality main; VTy type; TyClosure motive; TmClosure body; };
struct FUp { CodeKind kind; };
using Frame = std::variant<FApp, FFst, FSnd, FIf, FJ, FCrispJ, FLetMod, FUp>;

/// A variable (by level, with its 2-cell) under a spine of eliminations.
/// FLetMod and FCrispJ frames put everything before them under their lock.
struct Neutral {
  std::size_t level;
  Cell cell;
  std::vector<Frame> frames;
};

struct VLam { TmClosure body; };
struct VPair { Value fst; Value snd; };
struct VTrue {};
struct VFalse {};
struct VRefl { Value value; };
struct VMkBox { Modality mod; Value body; };
struct VDownWrap { CodeKind kind; Value body; };
struct VNeutral { VTy type; Neutral ne; };
struct VPiCode { Modality mod; Value dom; TmClosure cod; };
struct VSigCode { Value fst; TmClosure snd; };
struct VBoolCode {};
struct VModCode { Modality mod; Value code; };
struct VPi { Modality mod; VTy dom; TyClosure cod; };
struct VSig { VTy fst; TyClosure snd; };
struct VBool {};
struct VId { VTy type; Value lhs; Value rhs; };
struct VMod { Modality mod; VTy body; };
struct VUni {};
struct VDec { Value code; };

using ValueVariant = std::variant<VLam, VPair, VTrue, VFalse, VRefl, VMkBox, VDownWrap, VNeutral, VPiCode, VSigCode,
                                  VBoolCode, VModCode, VPi, VSig, VBool, VId, VMod, VUni, VDec>;
struct ValueNode { ValueVariant node; };

template <typename T>
Value make_value(T node) { return std::make_shared<const ValueNode>(ValueNode{ValueVariant(std::move(node))}); }

/// Evaluation and readback against one mode theory.
class Nbe {
 public:
  explicit Nbe(const ModeTheory& theory) : th_(theory) {}

  const ModeTheory& theory() const { return th_; }

  Value eval(const Env& env, const Tm& t) const;
  VTy eval_ty(const Env& env, const Ty& a) const;

  Value inst(const TmClosure& c, const Value& v, const Modality& mu) const;
  VTy inst(const TyClosure& c, const Value& v, const Modality& mu) const;
  VTy inst3(const TyClosure& c, const Value& x, const Value& y, const Value& p, const Modality& mu) const;

  Value do_app(const Modality& mu, const Value& f, const Value& a) const;
  Value do_fst(const Value& p) const;
  Value do_snd(const Value& p) const;
  Value do_if(const TyClosure& motive, const Value& t, const Value& f, const Value& b) const;
  Value do_j(const TyClosure& motive, const TmClosure& refl_case, const Value& p) const;
  Value do_crisp_j(const Modality& mu, const TyClosure& motive, const TmClosure& refl_case, const Value& p) const;
  Value do_letmod(const Modality& frame, const Modality& main, const TyClosure& motive, const Value& scrut,
                  const TmClosure& body) const;
  Value do_up(std::optional<CodeKind> kind, const Value& v) const;
  /// The type a code of the given canonical shape stands for, e.g. '<μ|c> ↦ <μ| Dec c>.
  VTy decode_code(const Value& code) const;

  /// Moves v along the key α : μ ⇒ ν at a lock followed by further locks ξ.
  Value val_restrict(const Value& v, const Cell& alpha, const Modality& xi) const;
  Value val_restrict(const Value& v, const Cell& alpha) const;

  /// Fresh variable of type a at level `level`, bound with annotation mu.
  Value fresh(std::size_t level, const VTy& a, const Modality& mu) const;
  Value reflect(const VTy& a, Neutral ne) const;

  Nf reify(std::size_t depth, const VTy& a, const Value& v) const;
  NfTy reify_ty(std::size_t depth, const VTy& a) const;
  Ne reify_ne(std::size_t depth, const Neutral& ne) const;

  Env init_env(const Ctx& ctx) const;
  Nf normalize(const Ctx& ctx, const Ty& a, const Tm& m) const;
  NfTy normalize_ty(const Ctx& ctx, const Ty& a) const;

 private:
  Value lookup(const Env& env, std::size_t k, const std::optional<Cell>& cell) const;
  Neutral restrict_ne(const Neutral& ne, const Cell& alpha, const Modality& xi) const;

  const ModeTheory& th_;
};

std::optional<CodeKind> code_kind_of(const Value& code);

}  // namespace mtt
