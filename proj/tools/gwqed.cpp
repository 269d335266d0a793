#include <iostream>
#include <string>
#include <vector>

#include "gwqed/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gwqed::cli_main(args, std::cout, std::cerr);
}
