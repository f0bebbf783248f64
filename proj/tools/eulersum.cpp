#include <iostream>

#include "eulersum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eulersum::cli::run(args, std::cout, std::cerr);
}
