#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace preper {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // what was checked, or why it failed
  long millis = 0;
  long limit_millis = 0;
};

// Runs the full end-to-end verification battery in order, printing one
// PASS/FAIL line per criterion to out as it goes. A criterion passes only if
// its checks hold and it finishes inside its time budget. Exceptions are
// caught and reported as failures; the battery always runs to the end.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace preper
