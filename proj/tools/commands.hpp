#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace argstrength::cli {

enum ExitCode : int { ok = 0, input_error = 1, numerical_error = 2 };

/// Runs one invocation; args exclude the program name. Reports go to `out`
/// (or the --out target), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace argstrength::cli
