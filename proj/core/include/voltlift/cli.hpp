#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace voltlift {

/// Command-line driver. Returns the process exit code: 0 for a decided or
/// successful run, 1 for input errors, 2 when a search budget was exhausted.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace voltlift
