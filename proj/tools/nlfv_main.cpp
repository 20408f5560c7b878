#include <iostream>

#include "nlfv/cli.hpp"

int main(int argc, char** argv) { return nlfv::run_cli(argc, argv, std::cout, std::cerr); }
