#include <iostream>
#include <string>
#include <vector>

#include "rehome/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rehome::cli_dispatch(args, std::cout, std::cerr);
}
