#pragma once

// Acceptance suite: one entry per exit criterion, each with pinned
// tolerances. Shared by the acceptance test binary and `fockforge verify`.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fockforge {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  // Worst observed deviation and the bound it was held to.
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CriterionResult()> run;
};

const std::vector<Criterion>& acceptance_criteria();

// Runs every criterion (or only `only` when non-zero) and prints one line each.
std::vector<CriterionResult> run_acceptance(std::ostream& out, int only = 0);

}  // namespace fockforge
