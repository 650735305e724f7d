#include <iostream>

#include "isoclass_cli/cli.hpp"

int main(int argc, char** argv) { return isoclass::cli::run_cli(argc, argv, std::cout, std::cerr); }
