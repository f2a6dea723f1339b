// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "invnet/fol/ir.hpp"

namespace invnet::fol {

struct SymbolCount {
  std::string name;
  long count = 0;
  double fraction = 0.0;
};

// Occurrence counts over all literal term trees, sorted by count descending
// then name. With collapse_generated, skolemN / defN symbols are pooled under
// the class labels "skolem" and "def".
std::vector<SymbolCount> symbol_statistics(const ClauseSet& cs, bool collapse_generated = false);

}  // namespace invnet::fol
