#include <iostream>
#include <string>
#include <vector>

#include "qec3/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qec3::run_cli(args, std::cout, std::cerr);
}
