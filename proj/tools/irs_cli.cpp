#include <iostream>
#include <string>
#include <vector>

#include "irs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = irs::cli::run_cli(args, std::cin);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
