#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxent::cli {

// Runs one command line (program name excluded) and returns the exit status:
// 0 success, 1 validation error, 2 solver failure, 3 oracle guard.
// `in` backs the file name "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace maxent::cli
