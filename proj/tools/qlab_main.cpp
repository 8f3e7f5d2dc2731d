#include <iostream>

#include "qlab/cli.hpp"

int main(int argc, char** argv)
{
    return qlab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
