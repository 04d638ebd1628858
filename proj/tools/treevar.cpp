#include <iostream>

#include "treevar/cli.hpp"

int main(int argc, char** argv) {
  return treevar::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
