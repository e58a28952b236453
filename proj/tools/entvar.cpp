#include <iostream>

#include "entvar/cli.hpp"

int main(int argc, char** argv) { return entvar::run_cli(argc, argv, std::cout, std::cerr); }
