#include <iostream>

#include "gauduchon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gauduchon::run_cli(args, std::cout, std::cerr);
}
