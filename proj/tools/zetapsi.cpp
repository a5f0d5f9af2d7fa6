#include "zetapsi/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zetapsi::cli::run(argc, argv, std::cout, std::cerr); }
