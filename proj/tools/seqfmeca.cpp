#include <iostream>

#include "seqfmeca/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return seqfmeca::run(args, std::cout, std::cerr);
}
