#include <iostream>

#include "msign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return msign::cli::run(args, std::cout, std::cerr);
}
