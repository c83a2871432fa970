#include <iostream>

#include "vbpbb/cli.hpp"

int main(int argc, char** argv) { return vbpbb::cli::run(argc, argv, std::cout, std::cerr); }
