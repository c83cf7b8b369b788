#include <iostream>
#include <string>
#include <vector>

#include "obtool/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return obtool::run(args, std::cout, std::cerr);
}
