#pragma once

#include <string>
#include <vector>

// Runs the mtt binary over corpus/manifest.txt and compares against goldens.
namespace mtt::golden {

struct Case {
  std::string name, file, command, theory;
  bool crisp = false;
  std::string output;
  int exit = 0;
};

struct Outcome {
  int exit = -1;
  std::string out, err;
};

std::vector<Case> read_manifest(const std::string& corpus_dir);
Outcome run(const std::string& binary, const std::string& corpus_dir, const Case& c);
/// Empty when the case matches its goldens and exit code on two runs.
std::string verify(const std::string& binary, const std::string& corpus_dir, const Case& c);

}  // namespace mtt::golden
