#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace citestat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;

// Runs the command line `args` (args[0] is the program name). Data goes to
// `out` or the --out file, diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace citestat::cli
