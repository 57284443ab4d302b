#include <gtest/gtest.h>

#include "golden.hpp"
#include "mtt/surface.hpp"

namespace mtt {
namespace {

TEST(Cli, RunSource) {
  Config c;
  RunResult r = run_source(c, Command::normalize, "#normalize (\\x. x) true : Bool;", "a.mtt");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "true\n");
  EXPECT_EQ(r.err, "");

  RunResult bad = run_source(c, Command::check, "def x : Bool := (true, true);", "b.mtt");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.err.rfind("b.mtt:1:17: error: ", 0), 0u) << bad.err;

  EXPECT_EQ(run_source(c, Command::check, "def x : Bool := ;", "c.mtt").exit_code, 2);
  EXPECT_EQ(run_source(c, Command::check, "def x : Bool := $;", "c.mtt").exit_code, 2);
  EXPECT_EQ(run_source(c, Command::check, "#check y : Bool;", "c.mtt").exit_code, 1);
  EXPECT_EQ(run_command(c, Command::check, "/nonexistent/file.mtt").exit_code, 3);
  EXPECT_EQ(run_source(Config{"cubical", false, OutputStyle::plain}, Command::check, "", "d.mtt").exit_code, 3);

  RunResult conv = run_source(c, Command::conv, "#conv true == true;\n#conv true == false;\n#normalize true;", "e.mtt");
  EXPECT_EQ(conv.out, "true\nfalse\n");
}

TEST(Cli, GoldenCorpus) {
  auto cases = golden::read_manifest(MTT_CORPUS_DIR);
  ASSERT_GE(cases.size(), 20u);
  std::set<int> codes;
  for (const auto& c : cases) {
    EXPECT_EQ(golden::verify(MTT_BINARY, MTT_CORPUS_DIR, c), "") << c.name;
    codes.insert(c.exit);
  }
  EXPECT_EQ(codes, (std::set<int>{0, 1, 2, 3}));
}

TEST(Cli, Usage) {
  golden::Case c{"usage", "basics.mtt", "frobnicate", "trivial", false, "plain", 3};
  EXPECT_EQ(golden::run(MTT_BINARY, MTT_CORPUS_DIR, c).exit, 3);
  c.command = "check";
  c.output = "json";
  EXPECT_EQ(golden::run(MTT_BINARY, MTT_CORPUS_DIR, c).exit, 3);
}

}  // namespace
}  // namespace mtt
