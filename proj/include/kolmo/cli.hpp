#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

enum ExitCode : int { ok = 0, usage = 1, data = 2, external_tool = 3 };

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
