#include <iostream>
#include <string>
#include <vector>

#include "freemult/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return freemult::cli::run(args, std::cout, std::cerr);
}
