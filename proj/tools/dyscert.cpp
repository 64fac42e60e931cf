#include <iostream>

#include "dyscert/cli.hpp"

int main(int argc, char** argv)
{
    return dyscert::cli::run(argc, argv, std::cout, std::cerr);
}
