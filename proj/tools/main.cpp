#include <iostream>

#include "stanley/cli.hpp"

int main(int argc, char** argv) {
    return stanley::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
