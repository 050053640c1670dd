#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freespec::cli {

/// Exit statuses of run().
enum ExitCode : int { kTrue = 0, kFalse = 1, kInputError = 2 };

/// Runs one command. args excludes the program name. The JSON report goes to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freespec::cli
