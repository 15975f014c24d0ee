#include <iostream>

#include "montyq/cli.hpp"

int main(int argc, char** argv) { return montyq::cli::run(argc, argv, std::cout, std::cerr); }
