#include <iostream>
#include <string>
#include <vector>

#include "hyperlab/commands.hpp"

int main(int argc, char** argv) {
  return hyperlab::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
