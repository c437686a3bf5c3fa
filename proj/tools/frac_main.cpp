#include <iostream>

#include "frac/cli.hpp"

int main(int argc, char** argv) {
    return frac::cli::run(argc, argv, std::cout, std::cerr);
}
