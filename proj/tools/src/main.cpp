#include <iostream>
#include <string>
#include <vector>

#include "lowscat_cli/cli.hpp"

int main(int argc, char** argv) {
  return lowscat::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
