#include <iostream>
#include <string>
#include <vector>

#include "helios/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return helios::cli::run(args, std::cout, std::cerr);
}
