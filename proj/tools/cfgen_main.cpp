#include <iostream>

#include "cfgen/cli.hpp"

int main(int argc, char** argv) { return cfgen::cli::run(argc, argv, std::cout, std::cerr); }
