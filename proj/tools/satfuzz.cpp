#include <iostream>
#include <string>
#include <vector>

#include "satfuzz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return satfuzz::run_cli(args, std::cout, std::cerr);
}
