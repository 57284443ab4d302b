#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtt/mode_theory.hpp"
#include "mtt/normal_form.hpp"
#include "mtt/syntax.hpp"
#include "mtt/typechecker.hpp"

namespace mtt {

// ---- tokens ---------------------------------------------------------------

enum class Tok {
  ident, number, directive, eof,
  kw_def, kw_mod, kw_let, kw_in, kw_if, kw_then, kw_else, kw_refl, kw_J, kw_crispJ, kw_Bool, kw_U, kw_Dec,
  kw_Id, kw_fst, kw_snd, kw_true, kw_false, kw_return, kw_up, kw_down,
  defeq, colon, arrow, fat_arrow, lt, bar, gt, caret, lparen, rparen, dot, semi, comma, lbrace, rbrace, at,
  quote, star, backslash, le, eqeq, eq,
};
const char* tok_name(Tok t);

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

/// A located failure before type checking: lexing, parsing or name resolution.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Span span, const std::string& message) : std::runtime_error(message), span(span) {}
  Span span;
};

class LexError : public SyntaxError {
  using SyntaxError::SyntaxError;
};
class ParseError : public SyntaxError {
  using SyntaxError::SyntaxError;
};
class ResolveError : public SyntaxError {
  using SyntaxError::SyntaxError;
};

std::vector<Token> tokenize(std::string_view source);

// ---- surface syntax -------------------------------------------------------

/// Modality literal: generator names in lock order; empty (or "id") is the identity.
struct SMod {
  std::vector<std::string> gens;
  Span span;
};

/// Cell literal on a variable: `^id` or `^(a<=b)`.
struct SCell {
  bool identity = true;
  std::size_t from = 0;
  std::size_t to = 0;
  Span span;
};

struct STmNode;
struct STyNode;
using STm = std::shared_ptr<const STmNode>;
using STy = std::shared_ptr<const STyNode>;

/// A type under named binders (for motives).
struct SMotive {
  std::vector<std::string> names;
  STy type;
};

namespace stm {
struct Var { std::string name; std::optional<SCell> cell; };
struct Lam { std::string name; STm body; };
struct App { SMod mod; STm fn; STm arg; };
struct Pair { STm fst; STm snd; };
struct Fst { STm pair; };
struct Snd { STm pair; };
struct True {};
struct False {};
struct If { std::optional<SMotive> motive; STm then_case; STm else_case; STm scrut; };
struct Refl { STm value; };
struct J { STm proof; std::string name; STm refl_case; std::optional<SMotive> motive; };
struct CrispJ { SMod mod; STm proof; std::string name; STm refl_case; std::optional<SMotive> motive; };
struct MkBox { SMod mod; STm body; };
struct LetMod { SMod frame; SMod main; std::string name; STm scrut; std::optional<SMotive> motive; STm body; };
struct PiCode { std::string name; SMod mod; STm dom; STm cod; };
struct SigCode { std::string name; STm fst; STm snd; };
struct BoolCode {};
struct ModCode { SMod mod; STm code; };
struct Up { STm body; };
struct Down { STm body; };
struct Ann { STm term; STy type; };
}  // namespace stm

namespace sty {
struct Pi { std::string name; SMod mod; STy dom; STy cod; };  // name may be empty
struct Sig { std::string name; STy fst; STy snd; };
struct Bool {};
struct Uni {};
struct Dec { STm code; };
struct Id { STy type; STm lhs; STm rhs; };
struct Mod { SMod mod; STy body; };
}  // namespace sty

using STmVariant = std::variant<stm::Var, stm::Lam, stm::App, stm::Pair, stm::Fst, stm::Snd, stm::True, stm::False,
                                stm::If, stm::Refl, stm::J, stm::CrispJ, stm::MkBox, stm::LetMod, stm::PiCode,
                                stm::SigCode, stm::BoolCode, stm::ModCode, stm::Up, stm::Down, stm::Ann>;
using STyVariant = std::variant<sty::Pi, sty::Sig, sty::Bool, sty::Uni, sty::Dec, sty::Id, sty::Mod>;

struct STmNode {
  STmVariant node;
  Span span;
};
struct STyNode {
  STyVariant node;
  Span span;
};

struct SItem {
  enum class Kind { def, normalize, check, conv } kind;
  std::string name;  // def only
  STm term;
  STm other;  // conv only
  STy type;   // may be null for def, normalize, conv
  Span span;
};

std::vector<SItem> parse(const std::vector<Token>& tokens);
std::vector<SItem> parse_source(std::string_view source);
STm parse_term(std::string_view source);
STy parse_type(std::string_view source);

// ---- resolution -----------------------------------------------------------

/// Names in scope, oldest first, for resolving terms in a checking context.
struct Scope {
  struct Entry {
    bool is_lock;
    std::string name;
    Modality mod;
  };
  Mode base;
  std::vector<Entry> entries;
};

Tm resolve_tm(const ModeTheory& theory, const Scope& scope, const STm& t);
Ty resolve_ty(const ModeTheory& theory, const Scope& scope, const STy& t);
Modality resolve_mod(const ModeTheory& theory, Mode at, const SMod& m);

// ---- printing -------------------------------------------------------------

enum class OutputStyle { plain, sexp };

/// Names of the free variables by level; other levels print as x0, x1, ...
/// counted from the end of `free`. Printing starts at max(free.size(), depth).
struct PrintNames {
  std::vector<std::string> free;
  std::size_t depth = 0;
};

std::string format_nf(const ModeTheory& theory, const Nf& u, OutputStyle style, const PrintNames& names = {});
std::string format_ne(const ModeTheory& theory, const Ne& e, OutputStyle style, const PrintNames& names = {});
std::string format_nfty(const ModeTheory& theory, const NfTy& t, OutputStyle style, const PrintNames& names = {});

// ---- driver ---------------------------------------------------------------

enum class Command { check, normalize, conv };

struct Config {
  std::string mode_theory = "trivial";
  bool crisp = false;
  OutputStyle output = OutputStyle::plain;
};

struct Diagnostic {
  std::string severity = "error";
  Span span;
  std::string message;
  std::optional<std::string> expected;
  std::optional<std::string> actual;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Top-level state while processing a file: definitions so far and the
/// names in scope. Throws SyntaxError / TypeError on the first failure.
struct Session {
  Session(const ModeTheory& theory, const Config& config);

  std::optional<std::string> run(const SItem& item);
  void load(std::string_view source);

  std::pair<Tm, VTy> elaborate(const STm& term, const STy& type);
  Nf normalize(const STm& term, const STy& type);
  Nf normalize(std::string_view term, std::string_view type = {});
  NfTy normalize_ty(std::string_view type);
  bool conv(const STm& lhs, const STm& rhs, const STy& type);
  bool conv(std::string_view lhs, std::string_view rhs, std::string_view type = {});

  PrintNames print_names(std::size_t depth = 0) const { return PrintNames{names, depth}; }

  const ModeTheory& th;
  Checker checker;
  OutputStyle style;
  Scope scope;
  ElabCtx ctx;
  std::vector<std::string> names;
  std::set<std::string> defined;
};

/// Runs a command on source text; `file` is used only in diagnostics.
RunResult run_source(const Config& config, Command command, std::string_view source, const std::string& file);
/// Reads the file and runs the command (exit 3 if unreadable).
RunResult run_command(const Config& config, Command command, const std::string& path);
std::string render_diagnostic(const std::string& file, const Diagnostic& d);

}  // namespace mtt
