#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gen.hpp"
#include "mtt/surface.hpp"

namespace mtt {
namespace {

using namespace gen;

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string corpus(const std::string& name) { return std::string(MTT_CORPUS_DIR) + "/" + name; }

TEST(Lexer, Examples) {
  auto toks = tokenize("def x : Bool := true;");
  // Seven lexemes and the end marker.
  ASSERT_EQ(toks.back().kind, Tok::eof);
  EXPECT_EQ(toks.size(), 8u);
  std::vector<Tok> kinds;
  for (const auto& t : tokenize("<l| Bool>")) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<Tok>{Tok::lt, Tok::ident, Tok::bar, Tok::kw_Bool, Tok::gt, Tok::eof}));
  EXPECT_THROW(tokenize(std::string_view("\0", 1)), LexError);
  EXPECT_THROW(tokenize("def x := $;"), LexError);

  auto spans = tokenize("def\n  x");
  EXPECT_EQ(spans[1].span.line, 2u);
  EXPECT_EQ(spans[1].span.column, 3u);
  EXPECT_EQ(spans[1].span.offset, 6u);
  EXPECT_EQ(spans[1].span.length, 1u);
}

TEST(Parser, Examples) {
  auto items = parse_source("def not : Bool -> Bool := \\b. if b then false else true;");
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].kind, SItem::Kind::def);
  EXPECT_EQ(items[0].name, "not");
  EXPECT_TRUE(std::holds_alternative<sty::Pi>(items[0].type->node));
  EXPECT_TRUE(std::holds_alternative<stm::Lam>(items[0].term->node));

  auto boxed = parse_source("def s : <l| Bool> := mod_l true;");
  ASSERT_EQ(boxed.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<sty::Mod>(boxed[0].type->node));
  EXPECT_TRUE(std::holds_alternative<stm::MkBox>(boxed[0].term->node));

  try {
    parse_source("def x := ;");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.offset, 9u);
    EXPECT_EQ(e.span.column, 10u);
  }

  // Application binds tighter than pairing, arrows associate to the right.
  auto t = parse_type("Bool -> Bool -> Bool");
  auto* outer = std::get_if<sty::Pi>(&t->node);
  ASSERT_TRUE(outer);
  EXPECT_TRUE(std::holds_alternative<sty::Bool>(outer->dom->node));
  EXPECT_TRUE(std::holds_alternative<sty::Pi>(outer->cod->node));
  auto p = parse_term("(f a, b)");
  auto* pair = std::get_if<stm::Pair>(&p->node);
  ASSERT_TRUE(pair);
  EXPECT_TRUE(std::holds_alternative<stm::App>(pair->fst->node));
}

TEST(Resolve, Examples) {
  auto th = make_mode_theory("guarded");
  Scope empty{th->default_mode(), {}};
  Tm lam = resolve_tm(*th, empty, parse_term("\\x. x"));
  auto* l = std::get_if<tm::Lam>(&lam->node);
  ASSERT_TRUE(l);
  auto* v = std::get_if<tm::Var>(&l->body->node);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->index, 0u);

  // x is annotated l and used under mod_l: the elaborated cell is id_l.
  Session s(*th, Config{"guarded", false, OutputStyle::plain});
  auto [t, a] = s.elaborate(parse_term("\\x. mod_l x"), parse_type("(x : Bool) ->{l} <l| Bool>"));
  const Tm& body = std::get<tm::MkBox>(std::get<tm::Lam>(t->node).body->node).body;
  const auto& cell = std::get<tm::Var>(body->node).cell;
  ASSERT_TRUE(cell);
  EXPECT_TRUE(th->is_identity_cell(*cell));
  EXPECT_TRUE(th->eq_mod(cell->dom, *th->generator("l")));

  EXPECT_THROW(resolve_tm(*th, empty, parse_term("mod_q true")), ResolveError);
  EXPECT_THROW(resolve_tm(*th, empty, parse_term("y")), ResolveError);
  auto trivial = make_mode_theory("trivial");
  EXPECT_THROW(resolve_tm(*trivial, empty, parse_term("\\x. x^(0<=1)")), ResolveError);
}

TEST(Printer, Examples) {
  auto th = make_mode_theory("guarded");
  Modality id = th->id_mod(th->default_mode());
  EXPECT_EQ(format_nf(*th, make_nf(NfTrue{}), OutputStyle::plain), "true");
  Nf ident = make_nf(NfLam{make_nf(NfInj{make_ne(NeVar{0, th->id_cell(id)})})});
  EXPECT_EQ(format_nf(*th, ident, OutputStyle::plain), "\\x0. x0");
  Nf box = make_nf(NfMkBox{*th->generator("l"), make_nf(NfTrue{})});
  EXPECT_EQ(format_nf(*th, box, OutputStyle::sexp), "(mkbox l true)");
  EXPECT_EQ(format_nf(*th, box, OutputStyle::plain), "mod_l true");
}

// Every #normalize result in the corpus prints, parses, re-checks and
// re-normalizes to the same normal form.
TEST(RoundTrip, Corpus) {
  struct File {
    const char* name;
    const char* theory;
    bool crisp;
  };
  int checked = 0;
  for (const File& f : {File{"basics.mtt", "trivial", false}, File{"walking.mtt", "walking", false},
                        File{"combinators.mtt", "guarded", false}, File{"crisp.mtt", "guarded", true}}) {
    auto th = make_mode_theory(f.theory);
    Session s(*th, Config{f.theory, f.crisp, OutputStyle::plain});
    for (const auto& item : parse_source(read(corpus(f.name)))) {
      if (item.kind != SItem::Kind::normalize) {
        s.run(item);
        continue;
      }
      auto [t, a] = s.elaborate(item.term, item.type);
      const Nbe& nbe = s.checker.nbe();
      Nf u = nbe.reify(s.ctx.depth(), a, nbe.eval(s.ctx.env(), t));
      std::string text = format_nf(*th, u, OutputStyle::plain, s.print_names());
      Tm back = s.checker.check(s.ctx, resolve_tm(*th, s.scope, parse_term(text)), a);
      Nf v = nbe.reify(s.ctx.depth(), a, nbe.eval(s.ctx.env(), back));
      EXPECT_TRUE(nf_eq(*th, u, v)) << f.name << ": " << text;
      EXPECT_EQ(text, format_nf(*th, v, OutputStyle::plain, s.print_names()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 30);
}

const char* const kOpenNames[] = {"p", "q", "f", "e", "d", "bx", "g", "r", "h", "c"};

TEST(RoundTrip, GeneratedNormalForms) {
  auto th = make_mode_theory("guarded");
  Checker ch(*th, true);
  GCtx gctx = open_context(2);
  ElabCtx ctx = to_ctx(ch, gctx);
  Scope scope{th->default_mode(), {}};
  PrintNames names;
  std::size_t n = 0;
  for (const auto& e : gctx) {
    if (e.lock) {
      scope.entries.push_back({true, "", power(*th, e.k)});
    } else {
      scope.entries.push_back({false, kOpenNames[n], power(*th, e.k)});
      names.free.push_back(kOpenNames[n++]);
    }
  }
  ASSERT_EQ(n, std::size(kOpenNames));
  TermGen g(53, Options{2, true, true, 4});
  for (int i = 0; i < 400; ++i) {
    GTyP ty = g.type(2);
    VTy a = ch.nbe().eval_ty(ctx.env(), to_ty(*th, ty));
    Tm m = ch.check(ctx, to_tm(*th, g.term(gctx, ty, 4), ctx.depth()), a);
    Nf u = ch.nbe().reify(ctx.depth(), a, ch.nbe().eval(ctx.env(), m));
    std::string text = format_nf(*th, u, OutputStyle::plain, names);
    Tm back = ch.check(ctx, resolve_tm(*th, scope, parse_term(text)), a);
    Nf v = ch.nbe().reify(ctx.depth(), a, ch.nbe().eval(ctx.env(), back));
    ASSERT_TRUE(nf_eq(*th, u, v)) << text;
  }
}

// Diagnostics point inside the file at the offending lexeme, on mutated corpus files.
TEST(Spans, FuzzedSourcesReportAccurateSpans) {
  std::mt19937_64 rng(59);
  const std::string alphabet = "()\\.;:=-><|'*@{}x l1 \n$#truefalse";
  int lex = 0, parse = 0, type = 0;
  for (const char* name : {"basics.mtt", "combinators.mtt", "crisp.mtt"}) {
    const std::string original = read(corpus(name));
    auto th = make_mode_theory("guarded");
    for (int i = 0; i < 400; ++i) {
      std::string src = original;
      int edits = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < edits && !src.empty(); ++k) {
        std::size_t at = rng() % src.size();
        switch (rng() % 4) {
          case 0: src.erase(at, 1 + rng() % 4); break;
          case 3: {
            // Ill-typed but well-formed: a pair where a boolean was.
            std::size_t w = src.find("true", at);
            if (w != std::string::npos) src.replace(w, 4, "(true, true)");
            break;
          }
          case 1: src.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
          default: src[at] = alphabet[rng() % alphabet.size()]; break;
        }
      }
      std::optional<Span> span;
      try {
        Session s(*th, Config{"guarded", true, OutputStyle::plain});
        s.load(src);
      } catch (const LexError& e) {
        span = e.span;
        ++lex;
      } catch (const SyntaxError& e) {
        span = e.span;
        ++parse;
      } catch (const TypeError& e) {
        span = e.span;
        ++type;
      }
      if (!span) continue;
      ASSERT_LE(span->offset + span->length, src.size()) << src;
      // Line and column agree with the byte offset.
      std::size_t line = 1, col = 1;
      for (std::size_t b = 0; b < span->offset; ++b) {
        if (src[b] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      EXPECT_EQ(span->line, line);
      EXPECT_EQ(span->column, col);
      if (span->offset < src.size()) {
        EXPECT_GT(span->length, 0u) << src.substr(span->offset, 20);
        EXPECT_FALSE(std::isspace(static_cast<unsigned char>(src[span->offset]))) << src.substr(span->offset, 20);
      }
    }
  }
  EXPECT_GT(lex, 0);
  EXPECT_GT(parse, 20);
  EXPECT_GT(type, 50);
}

}  // namespace
}  // namespace mtt
