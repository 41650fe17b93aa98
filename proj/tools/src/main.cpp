#include <iostream>
#include <string>
#include <vector>

#include "maxent_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return maxent::cli::run(args, std::cin, std::cout, std::cerr);
}
