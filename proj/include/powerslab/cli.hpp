#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powerslab::cli {

// Runs one subcommand (args exclude the program name).  Returns 0 on
// success, 1 when a verification fails, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powerslab::cli
