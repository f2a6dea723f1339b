// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invnet/fol/ir.hpp"
#include "invnet/gnn/model.hpp"

namespace invnet::harness {

/// Syntactic bijections on a clause set. The first four leave the embedding
/// invariant (negate_predicate up to the sign of that predicate's row);
/// swap_arguments is a deliberate non-invariance used as a negative control.
enum class TransformKind {
  rename_symbols,
  negate_predicate,
  permute_clauses,
  permute_literals,
  swap_arguments,
};

std::string to_string(TransformKind k);
std::optional<TransformKind> transform_kind_from_string(const std::string& name);

struct Transform {
  TransformKind kind = TransformKind::rename_symbols;
  /// rename_symbols: old name -> new name; unlisted names stay. Must stay a
  /// bijection on the full name set.
  std::map<std::string, std::string> renaming;
  /// negate_predicate / swap_arguments target.
  std::string symbol;
  /// permute_clauses: entry k is the old index of the clause placed at k.
  std::vector<int32_t> clause_order;
  /// permute_literals: per clause, entry j is the old index of literal j.
  std::vector<std::vector<int32_t>> literal_orders;
};

/// Node correspondence between the graph of the original clause set and the
/// graph of the transformed one, per node class.
struct NodeMapping {
  std::vector<int32_t> clause, symbol, term;
};

struct TransformApplication {
  fol::ClauseSet cs;  // transformed clause set
  graph::Hypergraph before, after;
  NodeMapping map;
  /// Term nodes of `before` whose defining edges change sign (the literal
  /// nodes of a negated predicate).
  std::vector<char> sign_flips;
  /// Symbol node of `before` whose embedding is expected negated, or -1.
  int32_t negated_symbol = -1;
};

/// Applies the transform and derives the induced node mapping from the term
/// and symbol interning tables of the two graph builds.
TransformApplication apply_transform(const fol::ClauseSet& cs, const Transform& t,
                                     const graph::NodeTypeConfig& cfg = {});

/// Draws a random valid transform of the given kind, or nothing when the
/// clause set has no eligible target (e.g. no binary predicate applied to two
/// distinct arguments for swap_arguments).
std::optional<Transform> random_transform(TransformKind kind, const fol::ClauseSet& cs, Rng& rng);

struct InvarianceReport {
  bool structural_ok = false;
  std::string structural_error;  // first mismatch, empty when structural_ok
  double clause_dev = 0.0;       // max |before - mapped after| per node class
  double symbol_dev = 0.0;
  double term_dev = 0.0;
  double tol = 1e-9;

  double max_dev() const { return std::max(clause_dev, std::max(symbol_dev, term_dev)); }
  bool pass() const { return structural_ok && max_dev() <= tol; }
};

/// Checks that the transform's node mapping is a sign-aware isomorphism, then
/// forwards both graphs with the same parameters and compares rows under the
/// mapping. negate_predicate expects that predicate's row negated and all
/// other rows unchanged. Numeric comparison is skipped on structural failure.
InvarianceReport check_invariance(const fol::ClauseSet& cs, const Transform& t,
                                  tensor::ParamStore<double>& params, const gnn::Dims& dims,
                                  double tol = 1e-9, const graph::NodeTypeConfig& cfg = {});

}  // namespace invnet::harness
