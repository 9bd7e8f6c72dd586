#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stanley::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit status; diagnostics go to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stanley::cli
