#include <iostream>

#include "qweyl/cli.hpp"

int main(int argc, char** argv) { return qweyl::run_cli(argc, argv, std::cout, std::cerr); }
