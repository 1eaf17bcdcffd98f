#pragma once

// Command-line front end. Payloads go to `out` as JSON (DOT for `dot`),
// diagnostics to `err`. Exit codes: 0 success, 1 negative answer, 2 usage
// or data error.

#include <string>
#include <vector>

namespace reeb::cli {

struct Result {
  std::string out;
  std::string err;
  int exit_code = 0;
};

/// Arguments without the program name.
Result run(const std::vector<std::string>& args);

}  // namespace reeb::cli
