#include <iostream>

#include "apcycle_cli/cli.hpp"

int main(int argc, char** argv) { return apcycle::cli::main_entry(argc, argv, std::cout, std::cerr); }
