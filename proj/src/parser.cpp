#include <string>

#include "mtt/surface.hpp"

namespace mtt {

namespace {

Span cover(Span a, Span b) {
  if (b.offset + b.length < a.offset) return a;
  return Span{a.offset, b.offset + b.length - a.offset, a.line, a.column};
}

bool is_modbox(const Token& t) { return t.kind == Tok::ident && t.text.rfind("mod_", 0) == 0 && t.text.size() > 4; }

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  std::vector<SItem> program() {
    std::vector<SItem> items;
    while (!at(Tok::eof)) items.push_back(item());
    return items;
  }

  STm whole_term() {
    STm t = term();
    expect(Tok::eof, "end of input");
    return t;
  }

  STy whole_type() {
    STy t = type();
    expect(Tok::eof, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  Span last_span() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::eof ? "end of file"
                        : t.kind == Tok::ident || t.kind == Tok::number || t.kind == Tok::directive
                            ? "'" + t.text + "'"
                            : tok_name(t.kind);
    throw ParseError(t.span, "expected " + expected + ", found " + found);
  }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) error(what);
    return next();
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }

  std::string ident() { return expect(Tok::ident, "an identifier").text; }

  template <typename T>
  STm mk(T node, Span span) {
    return std::make_shared<const STmNode>(STmNode{STmVariant(std::move(node)), span});
  }
  template <typename T>
  STy mkty(T node, Span span) {
    return std::make_shared<const STyNode>(STyNode{STyVariant(std::move(node)), span});
  }

  // ---- items ----

  SItem item() {
    Span start = peek().span;
    if (accept(Tok::kw_def)) {
      SItem it{SItem::Kind::def, ident(), nullptr, nullptr, nullptr, start};
      if (accept(Tok::colon)) it.type = type();
      expect(Tok::defeq, "':='");
      it.term = term();
      expect(Tok::semi, "';'");
      it.span = cover(start, last_span());
      return it;
    }
    if (at(Tok::directive)) {
      std::string d = next().text;
      SItem it{SItem::Kind::normalize, "", nullptr, nullptr, nullptr, start};
      if (d == "#normalize") {
        it.term = term();
        if (accept(Tok::colon)) it.type = type();
      } else if (d == "#check") {
        it.kind = SItem::Kind::check;
        it.term = term();
        expect(Tok::colon, "':'");
        it.type = type();
      } else if (d == "#conv") {
        it.kind = SItem::Kind::conv;
        it.term = term();
        expect(Tok::eqeq, "'=='");
        it.other = term();
        if (accept(Tok::colon)) it.type = type();
      } else {
        throw ParseError(start, "unknown directive " + d);
      }
      expect(Tok::semi, "';'");
      it.span = cover(start, last_span());
      return it;
    }
    error("'def' or a directive");
  }

  // ---- modalities and cells ----

  SMod braced_mod() {
    Span start = expect(Tok::lbrace, "'{'").span;
    SMod m;
    while (at(Tok::ident)) {
      std::string g = next().text;
      if (g != "id") m.gens.push_back(g);
    }
    expect(Tok::rbrace, "'}' or a modality name");
    m.span = cover(start, last_span());
    return m;
  }

  // A single generator name (or id), or a braced composite.
  SMod mod_literal() {
    if (at(Tok::lbrace)) return braced_mod();
    const Token& t = expect(Tok::ident, "a modality");
    SMod m;
    if (t.text != "id") m.gens.push_back(t.text);
    m.span = t.span;
    return m;
  }

  // `mod_l` or `mod{l l}`.
  SMod modbox() {
    if (accept(Tok::kw_mod)) return braced_mod();
    const Token& t = next();
    SMod m;
    std::string g = t.text.substr(4);
    if (g != "id") m.gens.push_back(g);
    m.span = t.span;
    return m;
  }

  SMod arrow_mod() {
    if (at(Tok::lbrace)) return braced_mod();
    return SMod{{}, last_span()};
  }

  SCell cell() {
    Span start = peek().span;
    if (at(Tok::ident) && peek().text == "id") {
      next();
      return SCell{true, 0, 0, start};
    }
    expect(Tok::lparen, "'id' or '(' to start a cell");
    std::size_t a = std::stoul(expect(Tok::number, "a number").text);
    expect(Tok::le, "'<='");
    std::size_t b = std::stoul(expect(Tok::number, "a number").text);
    expect(Tok::rparen, "')'");
    return SCell{false, a, b, cover(start, last_span())};
  }

  std::optional<SMotive> motive(std::size_t binders) {
    if (!accept(Tok::kw_return)) return std::nullopt;
    expect(Tok::lparen, "'('");
    SMotive m;
    for (std::size_t i = 0; i < binders; ++i) m.names.push_back(ident());
    expect(Tok::dot, "'.'");
    m.type = type();
    expect(Tok::rparen, "')'");
    return m;
  }

  // ---- types ----

  bool binder_ahead() const {
    return at(Tok::lparen) && peek(1).kind == Tok::ident && peek(2).kind == Tok::colon;
  }

  STy type() {
    Span start = peek().span;
    STy s = sig_type();
    if (accept(Tok::arrow)) {
      SMod m = arrow_mod();
      STy cod = type();
      return mkty(sty::Pi{"", m, s, cod}, cover(start, last_span()));
    }
    return s;
  }

  STy sig_type() {
    Span start = peek().span;
    if (binder_ahead()) {
      next();
      std::string name = ident();
      expect(Tok::colon, "':'");
      STy dom = type();
      expect(Tok::rparen, "')'");
      if (accept(Tok::arrow)) {
        SMod m = arrow_mod();
        STy cod = type();
        return mkty(sty::Pi{name, m, dom, cod}, cover(start, last_span()));
      }
      expect(Tok::star, "'->' or '*' after a binder");
      STy snd = type();
      return mkty(sty::Sig{name, dom, snd}, cover(start, last_span()));
    }
    STy a = atom_type();
    if (accept(Tok::star)) {
      STy b = sig_type();
      return mkty(sty::Sig{"", a, b}, cover(start, last_span()));
    }
    return a;
  }

  STy atom_type() {
    Span start = peek().span;
    if (accept(Tok::kw_Bool)) return mkty(sty::Bool{}, start);
    if (accept(Tok::kw_U)) return mkty(sty::Uni{}, start);
    if (accept(Tok::kw_Dec)) {
      STm c = atom();
      return mkty(sty::Dec{c}, cover(start, last_span()));
    }
    if (accept(Tok::kw_Id)) {
      STy a = atom_type();
      STm l = atom();
      STm r = atom();
      return mkty(sty::Id{a, l, r}, cover(start, last_span()));
    }
    if (accept(Tok::lt)) {
      SMod m;
      m.span = peek().span;
      while (at(Tok::ident)) {
        std::string g = next().text;
        if (g != "id") m.gens.push_back(g);
      }
      m.span = cover(m.span, last_span());
      expect(Tok::bar, "'|'");
      STy body = type();
      expect(Tok::gt, "'>'");
      return mkty(sty::Mod{m, body}, cover(start, last_span()));
    }
    if (accept(Tok::lparen)) {
      STy t = type();
      expect(Tok::rparen, "')'");
      return t;
    }
    error("a type");
  }

  // ---- terms ----

  STm term() {
    Span start = peek().span;
    if (accept(Tok::backslash)) {
      std::vector<std::pair<std::string, Span>> names;
      do {
        names.emplace_back(peek().text, peek().span);
        ident();
      } while (at(Tok::ident));
      expect(Tok::dot, "'.'");
      STm body = term();
      for (auto it = names.rbegin(); it != names.rend(); ++it)
        body = mk(stm::Lam{it->first, body}, cover(it == names.rend() - 1 ? start : it->second, last_span()));
      return body;
    }
    if (accept(Tok::kw_let)) {
      SMod frame{{}, start};
      if (at(Tok::lbrace)) frame = braced_mod();
      if (!at(Tok::kw_mod) && !is_modbox(peek())) error("'mod_<modality>' pattern");
      SMod main = modbox();
      std::string name = ident();
      expect(Tok::eq, "'='");
      STm scrut = term();
      auto m = motive(1);
      expect(Tok::kw_in, "'in'");
      STm body = term();
      return mk(stm::LetMod{frame, main, name, scrut, m, body}, cover(start, last_span()));
    }
    if (accept(Tok::kw_if)) {
      STm scrut = term();
      auto m = motive(1);
      expect(Tok::kw_then, "'then'");
      STm t = term();
      expect(Tok::kw_else, "'else'");
      STm f = term();
      return mk(stm::If{m, t, f, scrut}, cover(start, last_span()));
    }
    return app();
  }

  bool atom_start() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: return !is_modbox(t);
      case Tok::kw_true:
      case Tok::kw_false:
      case Tok::lparen:
      case Tok::quote: return true;
      default: return false;
    }
  }

  STm app() {
    Span start = peek().span;
    STm head = prefix();
    while (true) {
      if (accept(Tok::at)) {
        SMod m = mod_literal();
        STm arg = atom();
        head = mk(stm::App{m, head, arg}, cover(start, last_span()));
      } else if (atom_start()) {
        STm arg = atom();
        head = mk(stm::App{SMod{{}, arg->span}, head, arg}, cover(start, last_span()));
      } else {
        return head;
      }
    }
  }

  std::pair<std::string, STm> bound_case() {
    expect(Tok::lparen, "'(' to start the refl case");
    std::string name = ident();
    expect(Tok::dot, "'.'");
    STm body = term();
    expect(Tok::rparen, "')'");
    return {name, body};
  }

  STm prefix() {
    Span start = peek().span;
    if (accept(Tok::kw_fst)) {
      STm p = atom();
      return mk(stm::Fst{p}, cover(start, last_span()));
    }
    if (accept(Tok::kw_snd)) {
      STm p = atom();
      return mk(stm::Snd{p}, cover(start, last_span()));
    }
    if (accept(Tok::kw_refl)) {
      STm a = atom();
      return mk(stm::Refl{a}, cover(start, last_span()));
    }
    if (accept(Tok::kw_up)) {
      STm a = atom();
      return mk(stm::Up{a}, cover(start, last_span()));
    }
    if (accept(Tok::kw_down)) {
      STm a = atom();
      return mk(stm::Down{a}, cover(start, last_span()));
    }
    if (at(Tok::kw_mod) || is_modbox(peek())) {
      SMod m = modbox();
      STm a = atom();
      return mk(stm::MkBox{m, a}, cover(start, last_span()));
    }
    if (accept(Tok::kw_J)) {
      STm p = atom();
      auto [name, refl] = bound_case();
      auto m = motive(3);
      return mk(stm::J{p, name, refl, m}, cover(start, last_span()));
    }
    if (accept(Tok::kw_crispJ)) {
      SMod mu = braced_mod();
      STm p = atom();
      auto [name, refl] = bound_case();
      auto m = motive(3);
      return mk(stm::CrispJ{mu, p, name, refl, m}, cover(start, last_span()));
    }
    return atom();
  }

  STm atom() {
    Span start = peek().span;
    if (at(Tok::ident) && !is_modbox(peek())) {
      std::string name = next().text;
      std::optional<SCell> c;
      if (accept(Tok::caret)) c = cell();
      return mk(stm::Var{name, c}, cover(start, last_span()));
    }
    if (accept(Tok::kw_true)) return mk(stm::True{}, start);
    if (accept(Tok::kw_false)) return mk(stm::False{}, start);
    if (accept(Tok::lparen)) {
      STm t = term();
      if (accept(Tok::comma)) {
        STm u = term();
        expect(Tok::rparen, "')'");
        return mk(stm::Pair{t, u}, cover(start, last_span()));
      }
      if (accept(Tok::colon)) {
        STy a = type();
        expect(Tok::rparen, "')'");
        return mk(stm::Ann{t, a}, cover(start, last_span()));
      }
      expect(Tok::rparen, "')', ',' or ':'");
      return t;
    }
    if (accept(Tok::quote)) return code(start);
    error("a term");
  }

  STm code(Span start) {
    if (accept(Tok::kw_Bool)) return mk(stm::BoolCode{}, cover(start, last_span()));
    if (accept(Tok::lt)) {
      SMod m;
      m.span = peek().span;
      while (at(Tok::ident)) {
        std::string g = next().text;
        if (g != "id") m.gens.push_back(g);
      }
      m.span = cover(m.span, last_span());
      expect(Tok::bar, "'|'");
      STm c = term();
      expect(Tok::gt, "'>'");
      return mk(stm::ModCode{m, c}, cover(start, last_span()));
    }
    expect(Tok::lparen, "'Bool', '<' or '(' after a quote");
    std::string name = ident();
    expect(Tok::colon, "':'");
    STm a = term();
    expect(Tok::rparen, "')'");
    if (accept(Tok::arrow)) {
      SMod m = arrow_mod();
      STm b = term();
      return mk(stm::PiCode{name, m, a, b}, cover(start, last_span()));
    }
    expect(Tok::star, "'->' or '*' in a code");
    STm b = term();
    return mk(stm::SigCode{name, a, b}, cover(start, last_span()));
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<SItem> parse(const std::vector<Token>& tokens) { return Parser(tokens).program(); }
std::vector<SItem> parse_source(std::string_view source) { return parse(tokenize(source)); }

STm parse_term(std::string_view source) {
  auto toks = tokenize(source);
  return Parser(toks).whole_term();
}

STy parse_type(std::string_view source) {
  auto toks = tokenize(source);
  return Parser(toks).whole_type();
}

}  // namespace mtt
