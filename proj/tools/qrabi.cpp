#include <iostream>

#include "qrabi/cli.hpp"

int main(int argc, char** argv) { return qrabi::cli::run(argc, argv, std::cout, std::cerr); }
