#include "symfam/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return symfam::run_cli(argc, argv, std::cout, std::cerr); }
