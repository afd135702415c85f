#include <iostream>

#include <spbw/cli.hpp>

int main(int argc, char** argv) { return spbw::run_cli(argc, argv, std::cout, std::cerr); }
