#include <iostream>
#include <string>
#include <vector>

#include "tauspec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out;
  int code = tauspec::cli::run(args, out);
  std::cout << out;
  return code;
}
