#include <iostream>
#include <string>
#include <vector>

#include "hptoda/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hptoda::dispatch(args, std::cout, std::cerr);
}
