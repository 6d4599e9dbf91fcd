#include <iostream>
#include <string>
#include <vector>

#include "rionset/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rionset::cli::run(args, std::cout, std::cerr);
}
