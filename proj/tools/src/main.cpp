#include "gshift_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return gshift::cli::run(argc, argv, std::cout, std::cerr);
}
