#include <iostream>
#include <string>
#include <vector>

#include "robust_search/service/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return robust_search::service::run_cli(args, std::cin, std::cout, std::cerr);
}
