// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "invnet/common.hpp"
#include "invnet/fol/ir.hpp"

namespace invnet::harness {

struct RandomClauseSetOptions {
  int max_clauses = 8;
  int max_literals = 4;
  int max_term_depth = 3;
  int n_predicates = 4;
  int n_functions = 3;
  int n_constants = 3;
  int max_arity = 3;
  int max_vars_per_clause = 3;
  double negative_prob = 0.4;
  double equality_prob = 0.15;
  double conjecture_prob = 0.2;  // chance the last clause is a negated conjecture
};

/// Seedable generator of small well-formed clause sets; the workhorse input
/// source for the invariance, gradient, and edge-law suites.
fol::ClauseSet random_clause_set(Rng& rng, const RandomClauseSetOptions& opt = {});

}  // namespace invnet::harness
