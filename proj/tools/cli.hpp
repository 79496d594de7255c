#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace promap::cli {

/// Dispatches one promap invocation. `args` excludes the program name.
/// Exit codes: 0 success, 1 model errors or simulation violations,
/// 2 usage, parse, or I/O failures. Diagnostics go to `err`, artifacts
/// to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace promap::cli
