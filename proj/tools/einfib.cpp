#include <iostream>

#include "einfib/cli.hpp"

int main(int argc, char** argv) { return einfib::cli::run(argc, argv, std::cout, std::cerr); }
