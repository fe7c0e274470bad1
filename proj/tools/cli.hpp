#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abm::cli {

// Runs one command line (argv without the program name). Exit codes:
// 0 success, 1 mathematical failure (NotGeometric, NotStabilized, ...),
// 2 parse / IO / usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace abm::cli
