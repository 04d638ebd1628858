#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treevar {

/// Exit codes: 0 answer computed (Unknown included), 2 input or validation
/// error, 3 enumeration cap exceeded, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treevar
