#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixem::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kDegenerate = 2 };

/// Entry point of the `mixem` tool. `args` excludes the program name.
/// Normal output goes to `out`, warnings and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixem::cli
