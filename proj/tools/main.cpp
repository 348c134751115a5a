#include <iostream>
#include <string>
#include <vector>

#include "qpst/cli/cli_runner.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qpst::cli::run_cli(args, std::cout, std::cerr);
}
