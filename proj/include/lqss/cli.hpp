#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lqss::cli {

// Exit codes of the lqss tool.
enum Exit : int {
  ok = 0,
  verify_failed = 1,
  invalid_input = 2,
  unsupported_structure = 3,
  numerical_failure = 4,
};

// Runs `lqss <args...>` (args excludes the program name).  Results go to
// `out`; errors go to `err` as a JSON object {"error": {...}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqss::cli
