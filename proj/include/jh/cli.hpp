#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 invariant or
// pattern violation, 3 precision failure.

#include <ostream>
#include <string>
#include <vector>

namespace jh::cli {

enum ExitCode : int { ok = 0, usage = 1, violation = 2, precision = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jh::cli
