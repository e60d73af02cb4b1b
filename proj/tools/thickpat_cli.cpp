#include <iostream>
#include <string>
#include <vector>

#include "thickpat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thickpat::cli::run(args, std::cout, std::cerr, std::cin);
}
