#include <iostream>
#include <string>
#include <vector>

#include "depolarb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return depolarb::run_cli(args, std::cout, std::cerr);
}
