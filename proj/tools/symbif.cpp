#include "symbif/commands.hpp"

#include <iostream>

int main(int argc, char **argv) { return symbif::cli::run(argc, argv, std::cout, std::cerr); }
