#include <iostream>
#include <string>
#include <vector>

#include "ddsub/cli.hpp"

int main(int argc, char** argv) {
  return ddsub::run_command(std::vector<std::string>(argv + 1, argv + argc),
                            std::cout, std::cerr);
}
