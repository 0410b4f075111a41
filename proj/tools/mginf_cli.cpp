#include "mginf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mginf::cli::run(argc, argv, std::cout, std::cerr); }
