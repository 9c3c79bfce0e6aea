#include <iostream>

#include "xishift/cli.hpp"

int main(int argc, char** argv) { return xishift::run_cli(argc, argv, std::cout, std::cerr); }
