#pragma once

// Command-line front end. Exit codes:
//   0  success / Irreducible
//   1  Reducible (canonicalize: input not irreducible)
//   2  parse or configuration error
//   3  NotDecomposable / PreconditionFailed
//   4  BudgetExceeded

#include <ostream>
#include <string>
#include <vector>

namespace quadcomp::cli {

enum ExitCode : int {
  kOk = 0,
  kReducible = 1,
  kConfigError = 2,
  kNotDecomposable = 3,
  kBudgetExceeded = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace quadcomp::cli
