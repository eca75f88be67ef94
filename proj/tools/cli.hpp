#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfk::cli {

// Runs one cfk invocation.  args excludes the program name.  Results go to
// out, error records (one JSON object per line) to err.  Returns the exit
// code: 0 success, 1 validation or precondition failure, 2 undefined
// invariant, 3 I/O or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfk::cli
