#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return nled::app::run(argc, argv, std::cout, std::cerr); }
