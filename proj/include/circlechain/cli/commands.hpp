#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circlechain::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kClassification = 2, kPipeline = 3 };

/// Runs the command line (args excludes the program name). Output goes to
/// out, diagnostics to err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circlechain::cli
