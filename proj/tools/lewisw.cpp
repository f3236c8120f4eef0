#include <iostream>
#include <string>
#include <vector>

#include "lewis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lewis::io::run_cli(args, std::cout, std::cerr);
}
