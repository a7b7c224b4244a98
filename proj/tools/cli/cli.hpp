// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plcgrid::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kStructuralError = 2,
  kConstraintFailure = 3,
};

/// Runs `plcgrid <args...>` (args exclude the program name). Diagnostics go
/// to `err`, informational output to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plcgrid::cli
