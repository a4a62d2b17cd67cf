#include <iostream>
#include <string>
#include <vector>

#include "qsuff/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qsuff::run_cli(args, std::cout, std::cerr);
}
