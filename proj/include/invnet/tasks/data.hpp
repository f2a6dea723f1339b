// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "invnet/graph/hypergraph.hpp"

namespace invnet::tasks {

/// One symbol-naming problem: guess the vocabulary label of each scored
/// symbol node from its embedding alone.
struct SymbolProblem {
  std::string id;
  std::string text;  // CNF source, kept so datasets can be serialized
  graph::Hypergraph g;
  std::vector<int32_t> scored_nodes;    // symbol node ids
  std::vector<int32_t> targets;         // vocabulary index per scored node
  std::vector<bool> conjecture_scored;  // scored symbol occurs in the conjecture
};

struct SymbolDataset {
  std::vector<std::string> vocab;
  std::vector<SymbolProblem> train, test;
};

/// One premise-selection problem: a conjecture and its candidate premises
/// evaluated together as a single clause set.
struct PremiseProblem {
  std::string id;
  std::string text;  // CNF source, kept so datasets can be serialized
  graph::Hypergraph g;
  std::vector<int32_t> conjecture_clauses;
  std::vector<std::vector<int32_t>> candidate_clauses;  // clause nodes per candidate
  std::vector<int> labels;                              // 1 useful, 0 distractor
};

struct PremiseDataset {
  std::vector<PremiseProblem> train, test;
};

}  // namespace invnet::tasks
