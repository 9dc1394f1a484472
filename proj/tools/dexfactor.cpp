#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "dexfactor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    return dexfactor::cli::run(args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 70;
  }
}
