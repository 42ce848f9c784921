#include "kldecomp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kld::cli::run(argc, argv, std::cout, std::cerr); }
