#include <iostream>

#include "uskolem/cli.hpp"

int main(int argc, char** argv) {
    return uss::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
