#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtt/mode_theory.hpp"
#include "mtt/nbe.hpp"
#include "mtt/normal_form.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

enum class ErrorKind {
  scope,
  no_such_cell,
  mode_mismatch,
  not_a_function,
  not_a_mod,
  conversion_failure,
  universe,
  crisp_disabled,
  duplicate,
  cannot_infer,
};
const char* error_kind_name(ErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, Span span, const std::string& message) : std::runtime_error(message), kind(kind), span(span) {}

  ErrorKind kind;
  Span span;
  // Normal types involved in a failed conversion, valid at `depth` binders.
  std::optional<NfTy> expected;
  std::optional<NfTy> actual;
  std::size_t depth = 0;
};

struct ElabEntry {
  enum class Kind { bind, lock } kind;
  Modality mod;
  VTy type;  // lives under the binder's annotation; null for locks
};

/// Checking context: a telescope of binders and locks, with the evaluation
/// environment instantiating each binder by a fresh variable (or, for
/// definitions, by its value).
class ElabCtx {
 public:
  explicit ElabCtx(Mode base) : mode_(base), env_(base) {}

  ElabCtx bind(const Nbe& nbe, const Modality& mu, VTy type) const;
  ElabCtx define(const Modality& mu, VTy type, Value value) const;
  ElabCtx lock(const Modality& mu) const;

  Mode mode() const { return mode_; }
  const Env& env() const { return env_; }
  std::size_t depth() const { return depth_; }
  const std::vector<ElabEntry>& entries() const { return entries_; }

 private:
  std::vector<ElabEntry> entries_;
  Mode mode_;
  Env env_;
  std::size_t depth_ = 0;
};

/// A top-level definition; `type` may be null when the term is inferable.
struct Decl {
  std::string name;
  Ty type;
  Tm term;
  Span span;
};

struct CheckedDecl {
  std::string name;
  Ty type;   // elaborated
  Tm term;   // elaborated
  VTy type_value;
  Value value;
};

class Checker {
 public:
  Checker(const ModeTheory& theory, bool crisp) : th_(theory), nbe_(theory), crisp_(crisp) {}

  const ModeTheory& theory() const { return th_; }
  const Nbe& nbe() const { return nbe_; }
  bool crisp() const { return crisp_; }

  /// Resolves the cell of variable k (filling it in if omitted) and returns
  /// it with the variable's type at the use site.
  std::pair<Cell, VTy> check_var(const ElabCtx& ctx, std::size_t k, const std::optional<Cell>& cell,
                                 Span span = {}) const;
  std::pair<Tm, VTy> infer(const ElabCtx& ctx, const Tm& t) const;
  Tm check(const ElabCtx& ctx, const Tm& t, const VTy& a) const;
  std::pair<Ty, VTy> check_ty(const ElabCtx& ctx, const Ty& a) const;

  /// Both arguments must already be elaborated and well-typed.
  bool convertible_tm(const ElabCtx& ctx, const VTy& a, const Tm& m, const Tm& n) const;
  bool convertible_ty(const ElabCtx& ctx, const Ty& a, const Ty& b) const;

  /// Checks declarations in order; each becomes a definition visible to the
  /// next. Returns the elaborated declarations and the final context.
  std::pair<std::vector<CheckedDecl>, ElabCtx> check_program(const std::vector<Decl>& decls) const;

  ElabCtx empty_ctx() const { return ElabCtx(th_.default_mode()); }

 private:
  ElabCtx lock(const ElabCtx& ctx, const Modality& mu, Span span) const;
  void expect_conv(const ElabCtx& ctx, const VTy& expected, const VTy& actual, Span span) const;
  Tm code_of_type(const ElabCtx& ctx, const VTy& a, Span span) const;
  Ty motive_from(const ElabCtx& ctx, const VTy& a, std::size_t binders) const;

  const ModeTheory& th_;
  Nbe nbe_;
  bool crisp_;
};

}  // namespace mtt
