#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sel::cli {

enum ExitCode : int { kAnswered = 0, kNegative = 1, kInputError = 2, kInternalError = 3 };

// Runs one command line (without the program name). Results go to `out`,
// diagnostics and trace records to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sel::cli
