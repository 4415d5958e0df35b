#include <iostream>
#include <string>
#include <vector>

#include "bpccsp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bpc::runCli(args, std::cout, std::cerr);
}
