#include <iostream>

#include "arns_cli/run.hpp"

int main(int argc, char** argv) { return arns::cli::run(argc, argv, std::cout, std::cerr); }
