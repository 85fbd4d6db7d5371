#include <iostream>

#include "sipsim/cli.hpp"

int main(int argc, char** argv) { return sipsim::run_cli(argc, argv, std::cout, std::cerr); }
