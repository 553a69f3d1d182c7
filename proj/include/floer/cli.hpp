#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace floer::cli {

// Runs one floercalc invocation (args excludes the program name). Returns the exit code:
// 0 success, 1 domain error, 2 malformed input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace floer::cli
