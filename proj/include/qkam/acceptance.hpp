#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qkam {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // worst measured margins
};

// Runs the acceptance criteria (all 12 when `only` is empty), printing one
// PASS/FAIL line per criterion to `log` when non-null.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only,
                                            std::ostream* log = nullptr);

}  // namespace qkam
