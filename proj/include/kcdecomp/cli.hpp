#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcdecomp::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kError = 2 };

/// Runs one command line (without the program name). Results go to out as a
/// JSON document, diagnostics to err; "-" as an input path reads from in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace kcdecomp::cli
