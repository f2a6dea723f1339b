// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "invnet/tasks/data.hpp"

namespace invnet::harness {

/// Names of the ten-symbol vocabulary for the synthetic naming task, in
/// target-index order. Each name is recoverable from structure alone: arity,
/// polarity patterns (an equality-like symbol is reflexive and appears under
/// both signs), and co-occurrence (a zero-like constant sits under the only
/// unary function).
const std::vector<std::string>& symbol_vocab();

/// Seed-deterministic problems for the naming task. Every problem mixes two
/// or three clause families over problem-local glue constants; the final
/// family also contributes the negated conjecture, whose vocabulary symbols
/// are the conjecture-scored ones. Every problem scores at least 3 symbols.
tasks::SymbolDataset gen_symbol_dataset(int size, uint64_t seed, double test_fraction = 0.2);

/// Seed-deterministic problems for premise selection. A conjecture combines
/// two motifs (a paired binary predicate and unary function); positive
/// candidates use both motifs, negatives at most one. Candidate counts are
/// even with half positive, so labels balance at exactly 50%.
tasks::PremiseDataset gen_premise_dataset(int size, uint64_t seed, double test_fraction = 0.2);

/// JSON round-trip for generated datasets: problems are stored as CNF text
/// plus labels and re-derive their graphs and scored nodes on load.
nlohmann::json dump_symbol_dataset(const tasks::SymbolDataset& data);
nlohmann::json dump_premise_dataset(const tasks::PremiseDataset& data);
tasks::SymbolDataset load_symbol_dataset(const nlohmann::json& doc);
tasks::PremiseDataset load_premise_dataset(const nlohmann::json& doc);

}  // namespace invnet::harness
