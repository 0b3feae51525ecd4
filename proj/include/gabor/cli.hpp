#pragma once

#include <string>
#include <vector>

namespace gabor {

/// Runs one CLI invocation (arguments exclude the program name) and returns
/// the process exit code: 0 success, 1 domain error (after printing
/// `error,<code>,<message>`), 2 usage error.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace gabor
