// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include <iostream>

#include "chipsim/cli.hpp"

int main(int argc, char** argv) { return chipsim::cli::cli_main(argc, argv, std::cout, std::cerr); }
