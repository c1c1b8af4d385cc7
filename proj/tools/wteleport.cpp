#include <iostream>

#include "wteleport/cli.hpp"

int main(int argc, char** argv) {
  return wteleport::cli::run(argc, argv, std::cout, std::cerr);
}
