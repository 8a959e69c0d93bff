#include "lcz/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lcz::cli::run(argc, argv, std::cout, std::cerr); }
