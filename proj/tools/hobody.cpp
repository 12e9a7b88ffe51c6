#include "hobody/harness.hpp"

#include <iostream>

int main(int argc, char** argv) { return hobody::run_cli(argc, argv, std::cout, std::cerr); }
