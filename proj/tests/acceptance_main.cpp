#include <cstdlib>
#include <cstring>
#include <iostream>

#include "augsimp/selftest.hpp"

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
      return 2;
    }
  }
  if (criterion < 0 || criterion > 9) {
    std::cerr << "criterion must be between 1 and 9 (0 runs all)\n";
    return 2;
  }
  return augsimp::run_acceptance(std::cout, criterion);
}
