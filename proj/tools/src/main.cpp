#include <iostream>

#include "gbfam_cli/commands.hpp"

int main(int argc, char** argv) { return gbfam::cli::run(argc, argv, std::cout, std::cerr); }
