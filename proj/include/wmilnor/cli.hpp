#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmilnor {

/// Runs the command line `args` (program name excluded). Results go to
/// `out`, diagnostics to `err`. Returns the process exit code: 0 on success
/// (and on `equal` for compare), 1 on `distinct`, 2 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wmilnor
