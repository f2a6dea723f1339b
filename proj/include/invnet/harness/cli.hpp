// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace invnet::harness {

/// Entry point for the command line tool. Returns the process exit code:
/// 0 on success, 1 when a requested check fails or a run aborts numerically,
/// 2 on usage, parse, or configuration errors.
int run_cli(int argc, const char* const* argv);

}  // namespace invnet::harness
