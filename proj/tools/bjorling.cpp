// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return bjorling::cli::run(argc, argv, std::cout, std::cerr); }
