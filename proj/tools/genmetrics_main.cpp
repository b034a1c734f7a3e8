#include <iostream>

#include "genmetrics/cli.hpp"

int main(int argc, char** argv) { return genmetrics::cli::run(argc, argv, std::cout, std::cerr); }
