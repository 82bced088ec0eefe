#include <iostream>
#include <vector>

#include "fincat/workspace.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fincat::run_command(std::move(args), std::cout, std::cerr);
}
