#include <iostream>
#include <string>
#include <vector>

#include "citestat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return citestat::cli::run(args, std::cout, std::cerr);
}
