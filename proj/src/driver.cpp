#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mtt/surface.hpp"

namespace mtt {

std::string render_diagnostic(const std::string& file, const Diagnostic& d) {
  std::ostringstream os;
  os << file << ":" << d.span.line << ":" << d.span.column << ": " << d.severity << ": " << d.message << "\n";
  if (d.expected) os << "  expected: " << *d.expected << "\n";
  if (d.actual) os << "  actual:   " << *d.actual << "\n";
  return os.str();
}

Session::Session(const ModeTheory& theory, const Config& config)
    : th(theory),
      checker(theory, config.crisp),
      style(config.output),
      scope{theory.default_mode(), {}},
      ctx(checker.empty_ctx()) {}

std::pair<Tm, VTy> Session::elaborate(const STm& term, const STy& type) {
  Tm t = resolve_tm(th, scope, term);
  if (!type) return checker.infer(ctx, t);
  auto [ty, vty] = checker.check_ty(ctx, resolve_ty(th, scope, type));
  return {checker.check(ctx, t, vty), vty};
}

std::optional<std::string> Session::run(const SItem& item) {
  switch (item.kind) {
    case SItem::Kind::def: {
      if (!defined.insert(item.name).second)
        throw TypeError(ErrorKind::duplicate, item.span, "'" + item.name + "' is already defined");
      auto [t, vty] = elaborate(item.term, item.type);
      Value v = checker.nbe().eval(ctx.env(), t);
      ctx = ctx.define(th.id_mod(ctx.mode()), vty, v);
      scope.entries.push_back({false, item.name, th.id_mod(ctx.mode())});
      names.push_back(item.name);
      return std::nullopt;
    }
    case SItem::Kind::normalize:
      return format_nf(th, normalize(item.term, item.type), style, print_names());
    case SItem::Kind::check: {
      elaborate(item.term, item.type);
      return std::nullopt;
    }
    case SItem::Kind::conv:
      return conv(item.term, item.other, item.type) ? "true" : "false";
  }
  return std::nullopt;
}

void Session::load(std::string_view source) {
  for (const auto& item : parse_source(source)) run(item);
}

Nf Session::normalize(const STm& term, const STy& type) {
  auto [t, vty] = elaborate(term, type);
  const Nbe& nbe = checker.nbe();
  return nbe.reify(ctx.depth(), vty, nbe.eval(ctx.env(), t));
}

Nf Session::normalize(std::string_view term, std::string_view type) {
  return normalize(parse_term(term), type.empty() ? nullptr : parse_type(type));
}

NfTy Session::normalize_ty(std::string_view type) {
  auto [ty, vty] = checker.check_ty(ctx, resolve_ty(th, scope, parse_type(type)));
  return checker.nbe().reify_ty(ctx.depth(), vty);
}

bool Session::conv(const STm& lhs, const STm& rhs, const STy& type) {
  auto [t, vty] = elaborate(lhs, type);
  Tm u = checker.check(ctx, resolve_tm(th, scope, rhs), vty);
  return checker.convertible_tm(ctx, vty, t, u);
}

bool Session::conv(std::string_view lhs, std::string_view rhs, std::string_view type) {
  return conv(parse_term(lhs), parse_term(rhs), type.empty() ? nullptr : parse_type(type));
}

RunResult run_source(const Config& config, Command command, std::string_view source, const std::string& file) {
  RunResult result;
  std::shared_ptr<const ModeTheory> theory;
  try {
    theory = make_mode_theory(config.mode_theory);
  } catch (const InstanceError& e) {
    result.exit_code = 3;
    result.err = file + ": error: " + e.what() + "\n";
    return result;
  }

  std::vector<SItem> items;
  try {
    items = parse_source(source);
  } catch (const SyntaxError& e) {
    result.exit_code = 2;
    result.err = render_diagnostic(file, Diagnostic{"error", e.span, e.what(), {}, {}});
    return result;
  }

  Session session(*theory, config);
  std::ostringstream out;
  for (const auto& item : items) {
    try {
      auto line = session.run(item);
      bool wanted = (command == Command::normalize && item.kind == SItem::Kind::normalize) ||
                    (command == Command::conv && item.kind == SItem::Kind::conv);
      if (line && wanted) out << *line << "\n";
    } catch (const SyntaxError& e) {
      result.exit_code = 1;
      result.err = render_diagnostic(file, Diagnostic{"error", e.span, e.what(), {}, {}});
      break;
    } catch (const TypeError& e) {
      Diagnostic d{"error", e.span, e.what(), {}, {}};
      auto names = session.print_names(e.depth);
      if (e.expected) d.expected = format_nfty(*theory, *e.expected, OutputStyle::plain, names);
      if (e.actual) d.actual = format_nfty(*theory, *e.actual, OutputStyle::plain, names);
      result.exit_code = 1;
      result.err = render_diagnostic(file, d);
      break;
    } catch (const std::runtime_error& e) {
      // Only reachable on internal invariant violations; report at the item.
      result.exit_code = 1;
      result.err = render_diagnostic(file, Diagnostic{"error", item.span, std::string("internal: ") + e.what(), {}, {}});
      break;
    }
  }
  result.out = out.str();
  return result;
}

RunResult run_command(const Config& config, Command command, const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return RunResult{3, "", path + ": error: cannot read file\n"};
  std::ifstream in(path, std::ios::binary);
  if (!in) return RunResult{3, "", path + ": error: cannot read file\n"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return RunResult{3, "", path + ": error: cannot read file\n"};
  return run_source(config, command, buf.str(), path);
}

}  // namespace mtt
