#include <iostream>
#include <string>
#include <vector>

#include "vitkerr_tools/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vitkerr::tools::run_app(args, std::cout, std::cerr);
}
