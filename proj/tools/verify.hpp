#pragma once

#include <string>
#include <vector>

namespace lieflow::cli {

/// Names accepted by verify_suite, in documented order.
std::vector<std::string> verify_suite_names();

/// Runs one invariant suite, printing one line per check to stdout.
/// Returns 0 when every check passes, 1 otherwise. Unknown names throw
/// ConfigError.
int verify_suite(const std::string& name);

}  // namespace lieflow::cli
