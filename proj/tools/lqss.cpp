#include <iostream>
#include <string>
#include <vector>

#include "lqss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lqss::cli::run(args, std::cout, std::cerr);
}
