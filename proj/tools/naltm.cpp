#include <iostream>
#include <string>
#include <vector>

#include "naltm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return naltm::run_main(args, std::cout, std::cerr);
}
