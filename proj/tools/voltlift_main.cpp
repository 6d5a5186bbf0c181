#include <iostream>
#include <string>
#include <vector>

#include "voltlift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return voltlift::runCli(args, std::cout, std::cerr);
}
