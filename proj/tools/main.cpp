#include <iostream>

#include "s2h/cli/cli.hpp"

int main(int argc, char** argv) { return s2h::cli::run(argc, argv, std::cout, std::cerr); }
