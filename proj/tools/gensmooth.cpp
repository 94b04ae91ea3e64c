#include <iostream>

#include "gensmooth/cli.hpp"

int main(int argc, char** argv) { return gensmooth::cli_main(argc, argv, std::cout, std::cerr); }
