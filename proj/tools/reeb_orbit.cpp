#include <iostream>
#include <string>
#include <vector>

#include "reeb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = reeb::cli::run(args);
  std::cout << r.out;
  if (!r.err.empty()) std::cerr << r.err;
  return r.exit_code;
}
