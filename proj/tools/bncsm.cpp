#include "bncsm_cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bncsm::cli::run(argc, argv, std::cout, std::cerr); }
