#include <iostream>

#include "heightcensus/cli.hpp"

int main(int argc, char** argv) {
    return hc::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
