#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superbracket::cli {

enum ExitCode { Ok = 0, InputError = 1, MathError = 2, InternalError = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superbracket::cli
