#include <iostream>

#include "stsb/cli.hpp"

int main(int argc, char** argv) { return stsb::run_command(argc, argv, std::cout, std::cerr); }
