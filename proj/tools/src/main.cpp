#include <iostream>

#include "expower_cli/cli.hpp"

int main(int argc, char** argv) { return expower::cli::run(argc, argv, std::cout, std::cerr); }
