#include <iostream>
#include <string>
#include <vector>

#include "pwp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pwp::cli::run_cli(args, std::cout, std::cerr);
}
