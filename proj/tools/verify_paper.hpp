#pragma once

#include <string>
#include <vector>

namespace funtf::tools {

struct PaperCheck {
  std::string id;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<PaperCheck> checks;
  bool all_pass = true;
};

// Runs the bundled reproduction suite; filter selects a single check id
// (empty = all). Unknown filters yield an empty report.
VerifyReport run_verify_paper(const std::string& filter = "");

}  // namespace funtf::tools
