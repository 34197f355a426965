#include <iostream>
#include <string>
#include <vector>

#include "restart_reasoner/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rr::run_cli(args, std::cout, std::cerr);
}
