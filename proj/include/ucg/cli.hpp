#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucg::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailed = 2 };

/// Runs one command line (without the program name). Results go to `out`; usage
/// text and diagnostics go to `err`. `in` backs the "-" file argument.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace ucg::cli
