#include <iostream>

#include "toporna/cli.hpp"

int main(int argc, char** argv) {
  return toporna::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
