#include <iostream>

#include "lopcut_cli/cli.hpp"

int main(int argc, char** argv) {
  return lopcut::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
