#include <iostream>
#include <string>
#include <vector>

#include "useg/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return useg::RunCli(args, std::cin, std::cout, std::cerr);
}
