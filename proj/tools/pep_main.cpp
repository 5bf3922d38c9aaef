#include <iostream>

#include "pep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pep::cli::run(args, std::cout, std::cerr);
}
