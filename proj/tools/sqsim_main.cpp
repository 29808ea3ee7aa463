#include <iostream>

#include "spinqec/cli.hpp"

int main(int argc, char** argv) {
    return spinqec::run_cli(argc, argv, std::cout, std::cerr);
}
