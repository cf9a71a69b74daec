#include <iostream>
#include <string>
#include <vector>

#include "chordgrid/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chordgrid::cli::run(args, std::cout, std::cerr);
}
