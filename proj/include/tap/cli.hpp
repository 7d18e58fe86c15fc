#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tap {

// Runs the tap command-line tool on args (program name excluded).
// Exit codes: 0 success, 2 infeasible instance, 3 parse/usage error,
// 4 internal invariant failure (including audit violations).
int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tap
