#include <iostream>
#include <string>
#include <vector>

#include "pwsnf/cli.hpp"

int main(int argc, char** argv) {
  return pwsnf::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
