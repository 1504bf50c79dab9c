#include <iostream>

#include "tilelab/cli.hpp"

int main(int argc, char** argv) {
  return tilelab::cli::run(argc, argv, std::cout, std::cerr);
}
