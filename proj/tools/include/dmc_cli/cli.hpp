#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmc::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kMismatch = 2,
    kBudget = 3,
};

// args excludes the program name. "-" for a spec path or -o reads `in` or writes `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dmc::cli
