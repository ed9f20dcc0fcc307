#include <iostream>
#include <string>
#include <vector>

#include "z2scars/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return z2scars::cli::run(args, std::cout, std::cerr);
}
