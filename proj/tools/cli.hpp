#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krbenes::cli {

/// Runs one command line (args excludes the program name). Returns the process
/// exit code: 0 success, 1 verification failure, 2 bad input or structure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krbenes::cli
