#include <cctype>
#include <unordered_map>

#include "mtt/surface.hpp"

namespace mtt {

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::directive: return "directive";
    case Tok::eof: return "end of file";
    case Tok::kw_def: return "'def'";
    case Tok::kw_mod: return "'mod'";
    case Tok::kw_let: return "'let'";
    case Tok::kw_in: return "'in'";
    case Tok::kw_if: return "'if'";
    case Tok::kw_then: return "'then'";
    case Tok::kw_else: return "'else'";
    case Tok::kw_refl: return "'refl'";
    case Tok::kw_J: return "'J'";
    case Tok::kw_crispJ: return "'crispJ'";
    case Tok::kw_Bool: return "'Bool'";
    case Tok::kw_U: return "'U'";
    case Tok::kw_Dec: return "'Dec'";
    case Tok::kw_Id: return "'Id'";
    case Tok::kw_fst: return "'fst'";
    case Tok::kw_snd: return "'snd'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::kw_return: return "'return'";
    case Tok::kw_up: return "'up'";
    case Tok::kw_down: return "'down'";
    case Tok::defeq: return "':='";
    case Tok::colon: return "':'";
    case Tok::arrow: return "'->'";
    case Tok::fat_arrow: return "'=>'";
    case Tok::lt: return "'<'";
    case Tok::bar: return "'|'";
    case Tok::gt: return "'>'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::dot: return "'.'";
    case Tok::semi: return "';'";
    case Tok::comma: return "','";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::at: return "'@'";
    case Tok::quote: return "'''";
    case Tok::star: return "'*'";
    case Tok::backslash: return "'\\'";
    case Tok::le: return "'<='";
    case Tok::eqeq: return "'=='";
    case Tok::eq: return "'='";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> k = {
      {"def", Tok::kw_def},     {"mod", Tok::kw_mod},       {"let", Tok::kw_let},     {"in", Tok::kw_in},
      {"if", Tok::kw_if},       {"then", Tok::kw_then},     {"else", Tok::kw_else},   {"refl", Tok::kw_refl},
      {"J", Tok::kw_J},         {"crispJ", Tok::kw_crispJ}, {"Bool", Tok::kw_Bool},   {"U", Tok::kw_U},
      {"Dec", Tok::kw_Dec},     {"Id", Tok::kw_Id},         {"fst", Tok::kw_fst},     {"snd", Tok::kw_snd},
      {"true", Tok::kw_true},   {"false", Tok::kw_false},   {"return", Tok::kw_return}, {"up", Tok::kw_up},
      {"down", Tok::kw_down},
  };
  return k;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto emit = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(src.substr(i, len)), Span{i, len, line, col}});
    advance(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      auto word = src.substr(i, j - i);
      auto kw = keywords().find(word);
      emit(kw == keywords().end() ? Tok::ident : kw->second, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      emit(Tok::number, j - i);
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1) throw LexError(Span{i, 1, line, col}, "expected a directive name after '#'");
      emit(Tok::directive, j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == ":=") { emit(Tok::defeq, 2); continue; }
    if (two == "->") { emit(Tok::arrow, 2); continue; }
    if (two == "=>") { emit(Tok::fat_arrow, 2); continue; }
    if (two == "<=") { emit(Tok::le, 2); continue; }
    if (two == "==") { emit(Tok::eqeq, 2); continue; }
    Tok single;
    switch (c) {
      case ':': single = Tok::colon; break;
      case '<': single = Tok::lt; break;
      case '|': single = Tok::bar; break;
      case '>': single = Tok::gt; break;
      case '^': single = Tok::caret; break;
      case '(': single = Tok::lparen; break;
      case ')': single = Tok::rparen; break;
      case '.': single = Tok::dot; break;
      case ';': single = Tok::semi; break;
      case ',': single = Tok::comma; break;
      case '{': single = Tok::lbrace; break;
      case '}': single = Tok::rbrace; break;
      case '@': single = Tok::at; break;
      case '\'': single = Tok::quote; break;
      case '*': single = Tok::star; break;
      case '\\': single = Tok::backslash; break;
      case '=': single = Tok::eq; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string(1, c)
                                : "byte 0x" + std::string(1, "0123456789abcdef"[(c >> 4) & 0xf]) +
                                      std::string(1, "0123456789abcdef"[c & 0xf]);
        throw LexError(Span{i, 1, line, col}, "invalid character " + shown);
      }
    }
    emit(single, 1);
  }
  out.push_back({Tok::eof, "", Span{i, 0, line, col}});
  return out;
}

}  // namespace mtt
