// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/cli.hpp"

int main(int argc, char** argv) { return invnet::harness::run_cli(argc, argv); }
