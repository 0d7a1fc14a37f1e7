#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hll::cli {

enum Exit : int { ok = 0, failure = 1, usage = 2, invariant = 3, budget = 4 };

std::string version_string();

// Parses args (without the program name), runs the command, writes results to
// out (or the --out file) and the resolved configuration plus any error to
// err as JSON. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hll::cli
