#include <iostream>

#include "gsu/cli.hpp"

int main(int argc, char** argv) {
  return gsu::cli_run(argc, argv, std::cout, std::cerr);
}
