#include "g46/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return g46::run_cli(argc, argv, std::cout, std::cerr); }
