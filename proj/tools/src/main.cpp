#include <iostream>

#include "extopo_cli/cli.hpp"

int main(int argc, char** argv) {
  return extopo::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
