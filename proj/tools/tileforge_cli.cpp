#include <iostream>

#include "tileforge_cli.hpp"

int main(int argc, char** argv) { return tileforge::cli::run(argc, argv, std::cout, std::cerr); }
