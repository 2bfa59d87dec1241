#include "mwdim/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return mwdim::cli::run(argc, argv, std::cout, std::cerr);
}
