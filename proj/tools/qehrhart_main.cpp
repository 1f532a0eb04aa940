#include <iostream>

#include "qehrhart/cli.hpp"

int main(int argc, char** argv) { return qehrhart::cli::run(argc, argv, std::cout, std::cerr); }
