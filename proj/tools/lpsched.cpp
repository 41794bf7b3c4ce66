#include <iostream>
#include <string>
#include <vector>

#include "lpsched/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return lpsched::cli::run(args, std::cout, std::cerr);
}
