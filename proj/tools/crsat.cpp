#include <iostream>

#include "crsat/cli.hpp"

int main(int argc, char** argv) { return crsat::run_cli(argc, argv, std::cout, std::cerr, std::cin); }
