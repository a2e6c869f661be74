#include <iostream>
#include <string>
#include <vector>

#include "mpcr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mpcr::cli::dispatch(args, std::cout, std::cerr);
}
