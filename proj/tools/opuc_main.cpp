#include <iostream>

#include "opuc/cli.hpp"

int main(int argc, char** argv) { return opuc::run_cli(argc, argv, std::cout, std::cerr); }
