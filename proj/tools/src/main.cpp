#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return zml::cli::run(argc, argv, std::cout, std::cerr); }
