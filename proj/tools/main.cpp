#include <iostream>
#include <string>
#include <vector>

#include "mimkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mimkit::run_cli(args, std::cout, std::cerr);
}
