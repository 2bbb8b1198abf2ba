#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgraph::cli {

/// Exit codes: 0 pass, 1 verification failure, 2 malformed input.
enum Exit : int { pass = 0, fail = 1, malformed = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
