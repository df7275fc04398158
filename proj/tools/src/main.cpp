#include <iostream>

#include "qvortex/app/cli.hpp"

int main(int argc, char** argv) {
  return qvortex::app::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
