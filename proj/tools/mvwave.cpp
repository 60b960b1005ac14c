// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#include "mvwave/cli.hpp"

int main(int argc, char** argv) { return mvwave::run_cli(argc, argv); }
