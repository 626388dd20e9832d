#include <iostream>

#include "schur_cli.hpp"

int main(int argc, char** argv) { return schur::cli::run(argc, argv, std::cout, std::cerr); }
