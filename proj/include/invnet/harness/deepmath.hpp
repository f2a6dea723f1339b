// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "invnet/fol/clausify.hpp"
#include "invnet/tasks/data.hpp"

namespace invnet::harness {

struct DeepmathOptions {
  double test_fraction = 0.1;
  fol::ClausifyConfig clausify;
};

/// True when the file lands in the held-out split. Decided by a hash of the
/// base filename so the assignment survives re-runs and directory reordering.
bool deepmath_is_test(const std::string& filename, double test_fraction);

/// Parses one problem file: lines prefixed `C ` (conjecture), `+ ` (useful
/// premise) or `- ` (distractor), each followed by a first-order formula.
/// The whole file is clausified together with one shared fresh-symbol
/// counter; clauses are grouped back to their source formula by name.
tasks::PremiseProblem parse_deepmath_file(const std::string& text, const std::string& filename,
                                          const fol::ClausifyConfig& cfg = {});

/// Loads a problem directory (or a single file) into train/test splits.
tasks::PremiseDataset load_deepmath(const std::string& path, const DeepmathOptions& opt = {});

}  // namespace invnet::harness
