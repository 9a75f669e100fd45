#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cluster::cli {

// Runs one command (arguments without the program name). Returns the exit
// status: 0 success, 1 domain error or failed check, 2 malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cluster::cli
