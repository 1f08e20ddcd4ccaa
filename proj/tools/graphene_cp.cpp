#include <iostream>
#include <string>
#include <vector>

#include "graphene_cp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return gcp::cli::main(args, std::cout, std::cerr);
}
