#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pep::cli {

/// Exit codes: 0 answered, 1 bounded or inconclusive, 2 input error.
enum Exit { answered = 0, inconclusive = 1, input_error = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pep::cli
