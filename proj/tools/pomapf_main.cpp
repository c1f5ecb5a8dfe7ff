#include <iostream>
#include <string>
#include <vector>

#include "pomapf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pomapf::cli::run(args, std::cout, std::cerr);
}
