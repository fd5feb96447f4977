#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return r2d2::cli::run(argc, argv, std::cout, std::cerr); }
