#include <iostream>

#include "symdyn/cli.hpp"

int main(int argc, char** argv) { return symdyn::run_cli(argc, argv, std::cout, std::cerr); }
