#include <iostream>

#include "poissonkit/cli/cli.hpp"

int main(int argc, char** argv) { return poissonkit::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
