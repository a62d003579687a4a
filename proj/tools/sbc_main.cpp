#include <iostream>

#include "sbc/cli.hpp"

int main(int argc, char** argv) { return sbc::run_cli(argc, argv, std::cout, std::cerr); }
