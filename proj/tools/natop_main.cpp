#include <vector>
#include <string>

#include "natop/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return natop::run_cli(args);
}
