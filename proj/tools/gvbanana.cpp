#include <iostream>

#include "multibanana/cli.hpp"

int main(int argc, char** argv) { return mb::cli::run_cli(argc, argv, std::cout, std::cerr); }
