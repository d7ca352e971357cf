#include <iostream>

#include "s3contact/cli.hpp"

int main(int argc, char** argv) { return s3contact::cli::run(argc, argv, std::cout, std::cerr); }
