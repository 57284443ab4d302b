#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "mtt/surface.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mtt: type checker and normalizer for multimodal type theory"};
  app.require_subcommand(1, 1);

  mtt::Config config;
  if (const char* env = std::getenv("MTT_MODE_THEORY")) config.mode_theory = env;
  std::string file;
  std::string output = "plain";

  const std::map<std::string, mtt::Command> commands = {
      {"check", mtt::Command::check}, {"normalize", mtt::Command::normalize}, {"conv", mtt::Command::conv}};
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, name == "check"       ? "type check a file"
                                         : name == "normalize" ? "print the normal form of each #normalize"
                                                               : "print true/false for each #conv");
    sub->add_option("file", file, "source file")->required();
    sub->add_option("--mode-theory", config.mode_theory, "trivial, walking or guarded");
    sub->add_flag("--crisp", config.crisp, "enable crisp identity induction");
    sub->add_option("--output", output, "plain or sexp")->check(CLI::IsMember({"plain", "sexp"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  config.output = output == "sexp" ? mtt::OutputStyle::sexp : mtt::OutputStyle::plain;

  mtt::Command command = mtt::Command::check;
  for (const auto& [name, cmd] : commands)
    if (app.got_subcommand(name)) command = cmd;

  auto result = mtt::run_command(config, command, file);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
