#include <iostream>

#include "cvqkd/cli.hpp"

int main(int argc, char** argv) {
    return cvqkd::run_cli(argc, argv, std::cout, std::cerr);
}
