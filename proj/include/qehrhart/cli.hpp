#pragma once

#include <iosfwd>

namespace qehrhart::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kBudgetExceeded = 2,
  kCheckFailed = 3,  // pipelines disagree or a randomized check found a violation
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qehrhart::cli
