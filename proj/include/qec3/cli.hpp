#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qec3 {

/// Runs one CLI command. Reports go to `out` (or the file given by
/// --output); diagnostics go to `err`. Returns 0 when every executed check
/// passed, 1 on a failed check, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qec3
