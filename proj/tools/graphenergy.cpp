#include <iostream>

#include "graphenergy/cli.hpp"

int main(int argc, char** argv) { return graphenergy::cli::run(argc, argv, std::cout, std::cerr); }
