#include <iostream>
#include <string>
#include <vector>

#include "lindiff/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lindiff::runCli(args, std::cout, std::cerr);
}
