#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tg::cli {

/// Runs the tgame command line in-process. `args` excludes the program name.
/// Returns 0 on success, 2 on parse or precondition errors, 3 when the solver
/// refuses an instance.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tg::cli
