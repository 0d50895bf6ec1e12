#include <iostream>

#include "kernelsmith/cli.hpp"

int main(int argc, char** argv) {
  return kernelsmith::run_cli(argc, argv, std::cout, std::cerr);
}
