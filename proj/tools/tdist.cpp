#include <iostream>

#include "trimodal/cli.h"

int main(int argc, char** argv) { return trimodal::run_cli(argc, argv, std::cout, std::cerr); }
