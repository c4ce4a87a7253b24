#include <iostream>
#include <string>
#include <vector>

#include "bslimits/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return bslimits::cli::run(args, std::cout, std::cerr);
}
