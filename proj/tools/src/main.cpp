#include <iostream>

#include "randassign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return randassign::cli::run(args, std::cout, std::cerr);
}
