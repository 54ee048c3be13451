#include <iostream>

#include "gamma_envelope/cli.hpp"

int main(int argc, char** argv) { return gamma_envelope::cli::run(argc, argv, std::cout, std::cerr); }
