#include <iostream>

#include "qcdeph/cli.hpp"

int main(int argc, char** argv) { return qcdeph::cli::run(argc, argv, std::cout, std::cerr); }
