#include <string>
#include <vector>

#include "cgkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cgkit::run_cli(args);
}
