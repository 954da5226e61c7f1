#include "betalab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return betalab::run_cli(argc, argv, std::cout, std::cerr); }
