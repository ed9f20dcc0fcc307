#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace z2scars::cli {

/// Runs the command-line interface on `args` (args[0] is the program name)
/// and returns the process exit code: 0 on success, the ErrorCode value of a
/// module error otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

}  // namespace z2scars::cli
