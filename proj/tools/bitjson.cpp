#include <iostream>

#include "bitjson/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return bitjson::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
