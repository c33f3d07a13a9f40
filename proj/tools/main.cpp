#include <iostream>

#include "qig/cli.hpp"

int main(int argc, char** argv) { return qig::run_cli(argc, argv, std::cout, std::cerr); }
