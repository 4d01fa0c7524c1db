#include <iostream>

#include "fluxlogic/cli.hpp"

int main(int argc, char** argv) {
    return fluxlogic::run_cli(argc, argv, std::cout, std::cerr);
}
