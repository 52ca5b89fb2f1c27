#include <iostream>

#include "ucg/cli.hpp"

int main(int argc, char** argv) {
  return ucg::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, std::cin);
}
