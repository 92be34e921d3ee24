#include <iostream>
#include <string>
#include <vector>

#include "arte/cli.hpp"

int main(int argc, char** argv) {
  return arte::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
