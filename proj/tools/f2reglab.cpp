#include <iostream>

#include "f2reg/cli.hpp"

int main(int argc, char** argv) { return f2reg::cli::run(argc, argv, std::cout, std::cerr); }
