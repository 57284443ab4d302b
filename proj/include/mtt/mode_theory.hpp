#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtt {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mode (object of the mode theory), identified by its index within one instance.
struct Mode {
  std::uint8_t id = 0;
  friend bool operator==(Mode, Mode) = default;
};

/// A modality μ: dom → cod, stored as a canonical word of generator indices.
///
/// Words are kept in context (lock) order: the composite μ∘ν, which locks a
/// context first with μ and then with ν, has word `μ.word ++ ν.word`.
struct Modality {
  Mode dom;
  Mode cod;
  std::vector<std::uint8_t> word;

  bool is_identity() const { return word.empty(); }
  friend bool operator==(const Modality&, const Modality&) = default;
};

/// A 2-cell α: dom ⇒ cod between parallel modalities.
struct Cell {
  Modality dom;
  Modality cod;
  std::uint64_t rep = 0;  // instance-specific; 0 in every built-in theory

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Generator {
  std::string name;
  Mode dom;
  Mode cod;
};

/// A strict 2-category with decidable equality of modalities and 2-cells.
///
/// The base class implements the free category on the generators with
/// identity-erased words as canonical forms, and poset-enriched 2-cells
/// (a cell is determined by its endpoints; `has_cell` decides existence).
/// Instances are immutable and safe to share between threads.
class ModeTheory {
 public:
  virtual ~ModeTheory() = default;

  virtual std::string_view name() const = 0;
  virtual std::vector<std::string> mode_names() const = 0;
  virtual std::vector<Generator> generators() const = 0;
  /// Mode at which top-level declarations live.
  virtual Mode default_mode() const = 0;

  std::size_t mode_count() const { return mode_names().size(); }
  bool has_mode(Mode m) const { return m.id < mode_count(); }
  std::string mode_name(Mode m) const;
  std::optional<Mode> mode_by_name(std::string_view name) const;

  Modality id_mod(Mode m) const;
  std::optional<Modality> generator(std::string_view name) const;
  Modality compose_mod(const Modality& mu, const Modality& nu) const;
  virtual bool eq_mod(const Modality& mu, const Modality& nu) const;
  /// λ with compose_mod(λ, suffix) == whole, if one exists.
  std::optional<Modality> right_divide(const Modality& whole, const Modality& suffix) const;

  Cell id_cell(const Modality& mu) const;
  virtual Cell vcomp(const Cell& outer, const Cell& inner) const;
  virtual Cell hcomp(const Cell& left, const Cell& right) const;
  virtual bool eq_cell(const Cell& a, const Cell& b) const;
  virtual std::optional<Cell> find_cell(const Modality& from, const Modality& to) const;
  bool is_identity_cell(const Cell& c) const { return eq_cell(c, id_cell(c.dom)); }

  std::string format_mod(const Modality& mu) const;
  /// Surface spelling of a cell: "id" for identities, instance-specific otherwise.
  virtual std::string format_cell(const Cell& c) const;

 protected:
  /// Instance-specific canonicalisation of a composable word (default: none).
  virtual std::vector<std::uint8_t> normalize_word(std::vector<std::uint8_t> word) const { return word; }
  /// Whether a 2-cell from ⇒ to exists between parallel modalities.
  virtual bool has_cell(const Modality& from, const Modality& to) const = 0;

  void check_valid(const Modality& mu) const;
};

/// One mode, identity modality only.
class TrivialTheory final : public ModeTheory {
 public:
  std::string_view name() const override { return "trivial"; }
  std::vector<std::string> mode_names() const override { return {"m"}; }
  std::vector<Generator> generators() const override { return {}; }
  Mode default_mode() const override { return Mode{0}; }

 protected:
  bool has_cell(const Modality& from, const Modality& to) const override { return from == to; }
};

/// Modes n and m with a single generator mu: n → m and identity cells only.
class WalkingTheory final : public ModeTheory {
 public:
  std::string_view name() const override { return "walking"; }
  std::vector<std::string> mode_names() const override { return {"n", "m"}; }
  std::vector<Generator> generators() const override { return {{"mu", Mode{0}, Mode{1}}}; }
  Mode default_mode() const override { return Mode{1}; }

 protected:
  bool has_cell(const Modality& from, const Modality& to) const override { return from == to; }
};

/// One mode t; modalities are powers of the later modality l; a unique cell
/// l^a ⇒ l^b exists exactly when a ≤ b.
class GuardedTheory final : public ModeTheory {
 public:
  std::string_view name() const override { return "guarded"; }
  std::vector<std::string> mode_names() const override { return {"t"}; }
  std::vector<Generator> generators() const override { return {{"l", Mode{0}, Mode{0}}}; }
  Mode default_mode() const override { return Mode{0}; }
  std::string format_cell(const Cell& c) const override;

  Modality power(std::size_t n) const;

 protected:
  bool has_cell(const Modality& from, const Modality& to) const override {
    return from.word.size() <= to.word.size();
  }
};

/// Built-in instance by CLI name ("trivial", "walking", "guarded"); throws InstanceError otherwise.
std::shared_ptr<const ModeTheory> make_mode_theory(std::string_view name);

}  // namespace mtt
