#include <iostream>
#include <string>
#include <vector>

#include "hcm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hcm::cli::run(args, std::cout, std::cerr);
}
