#include <iostream>
#include <string>
#include <vector>

#include "hydro/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hydro::run_cli(args, std::cout, std::cerr);
}
