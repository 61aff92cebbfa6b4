#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rectifier {

/// Runs the command-line interface on `args` (without the program name).
/// Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rectifier
