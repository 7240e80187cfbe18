#include <iostream>

#include "schubloc/cli.hpp"

int main(int argc, char** argv) { return schubloc::cli::run(argc, argv, std::cout, std::cerr); }
