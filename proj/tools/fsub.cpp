#include <iostream>

#include "fsub/cli.hpp"

int main(int argc, char** argv) { return fsubtype::cli::run(argc, argv, std::cout, std::cerr); }
