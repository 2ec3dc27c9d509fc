#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mollify::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kNumericalError = 3 };

/// args excludes the program name. Output files are written directly; when no
/// --out is given the primary CSV goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace mollify::cli
