#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sipot::cli {

/// Execute one command line (without the program name). Returns the process
/// exit code: 0 success / all checks passed, 1 check failure or numeric
/// error, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sipot::cli
