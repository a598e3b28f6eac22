#include <iostream>

#include "ellroot/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ellroot::run_cli(args, std::cout, std::cerr);
}
