#include "slcm/metrics/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return slcm::metrics::cli_main(argc, argv, std::cout, std::cerr);
}
