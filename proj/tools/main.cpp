#include <iostream>

#include "taut2/cli.hpp"

int main(int argc, char** argv) { return taut2::cli::run(argc, argv, std::cout, std::cerr); }
