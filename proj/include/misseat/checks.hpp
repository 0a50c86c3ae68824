#pragma once

#include <string>
#include <vector>

namespace misseat {

struct CheckResult {
  std::string name;
  bool pass = false;
  long cases = 0;      // identities evaluated
  std::string detail;  // first failure; empty when passing
};

/// Runs every verification suite. The fixed-size kernel identities
/// always run at their full bounds; suites that sweep n are capped at
/// max_n (and at their own cost ceilings: equivalence 30, pmf
/// structure 100, specializations 40, oracle 8, outcome counting 7).
/// Requires max_n >= 2.
std::vector<CheckResult> run_all_checks(int max_n);

}  // namespace misseat
