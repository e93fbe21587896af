#include <iostream>
#include <string>
#include <vector>

#include "pclab/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pclab::cli::run(args, std::cout);
}
