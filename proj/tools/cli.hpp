#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specinv::cli {

/// Runs one CLI invocation. `args` excludes the program name. Errors are
/// written to `err` as a single line "error[<tag>]: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specinv::cli
