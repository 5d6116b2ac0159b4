#include <iostream>

#include "l4cov/cli.hpp"

int main(int argc, char** argv)
{
    std::cout << std::unitbuf;
    std::vector<std::string> args(argv + 1, argv + argc);
    return l4cov::cli::run(args, std::cout, std::cerr);
}
