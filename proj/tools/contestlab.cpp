#include <string>
#include <vector>

#include "contests/cli.hpp"

int main(int argc, char** argv) {
  return contests::run(std::vector<std::string>(argv + 1, argv + argc));
}
