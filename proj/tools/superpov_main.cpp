#include "superpov/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return superpov::cli::run(argc, argv, std::cout, std::cerr); }
