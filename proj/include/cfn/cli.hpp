#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfn {

/// Runs the cfcalc front end. `args` excludes the program name. Exit codes:
/// 0 success, 1 verification failure, 2 inadmissible label or usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfn
