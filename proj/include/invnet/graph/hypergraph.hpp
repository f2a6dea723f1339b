// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "invnet/fol/ir.hpp"

namespace invnet::graph {

/// Assignment of type tags to graph nodes. Clause tags derive from the TPTP
/// role; the variable tag may depend on the tag of the clause where the
/// variable first occurs (used by tableaux-style setups that distinguish
/// axiom variables from tableaux variables). Symbol tags listed as
/// sign-symmetric get a frozen zero initial vector so that a predicate and
/// its negation share one representation up to sign.
struct NodeTypeConfig {
  std::map<std::string, std::string> clause_tag_by_role = {
      {"negated_conjecture", "conjecture"}};
  std::string clause_fallback_tag = "premise";

  std::map<std::string, std::string> var_tag_by_clause_tag;
  std::string var_fallback_tag = "var";
  std::string literal_tag = "literal";
  std::string term_tag = "term";
  std::string t0_tag = "t0";

  std::string predicate_tag = "predicate";
  std::string function_tag = "function";
  std::vector<std::string> sign_symmetric_tags = {"predicate"};

  std::string clause_tag(const std::string& role) const {
    auto it = clause_tag_by_role.find(role);
    return it == clause_tag_by_role.end() ? clause_fallback_tag : it->second;
  }
  std::string var_tag(const std::string& clause_tag) const {
    auto it = var_tag_by_clause_tag.find(clause_tag);
    return it == var_tag_by_clause_tag.end() ? var_fallback_tag : it->second;
  }
  bool sign_symmetric(const std::string& symbol_tag) const {
    for (const auto& t : sign_symmetric_tags)
      if (t == symbol_tag) return true;
    return false;
  }

  /// All tags a model must provide initial vectors for, in a deterministic
  /// order (checkpoint naming depends on it).
  std::vector<std::string> clause_tags() const;
  std::vector<std::string> term_tags() const;
  std::vector<std::string> symbol_tags() const;

  /// Goal / path / axiom clause tags with tableaux-shared variables.
  static NodeTypeConfig tableaux();
};

struct CtEdge {
  int32_t clause = 0;
  int32_t term = 0;
  bool operator==(const CtEdge&) const = default;
};

/// (symbol, parent, child1, child2, sign). Children may be the T0 sentinel.
/// sign is +1 exactly when the parent is a negative literal, -1 otherwise.
struct StEdge {
  int32_t symbol = 0;
  int32_t parent = 0;
  int32_t child1 = 0;
  int32_t child2 = 0;
  int32_t sign = -1;
  bool operator==(const StEdge&) const = default;
};

struct Hypergraph {
  static constexpr int32_t kT0 = 0;

  int32_t n_c = 0;
  int32_t n_s = 0;
  int32_t n_t = 1;  // term index 0 is always the T0 sentinel

  std::vector<CtEdge> ct_edges;
  std::vector<StEdge> st_edges;

  std::vector<std::string> clause_type;  // n_c entries
  std::vector<std::string> symbol_type;  // n_s entries
  std::vector<std::string> term_type;    // n_t entries, [0] is the T0 tag
};

/// Node correspondence between a clause set and its graph, used to locate
/// specific nodes in tests and by the transform harness.
struct GraphNodeMap {
  std::map<fol::SymbolId, int32_t> symbol_node;
  // Key (term, true) is the node of a negative literal over that atom;
  // (term, false) is the plain term / positive literal node.
  std::map<std::pair<fol::TermId, bool>, int32_t> term_node;
};

Hypergraph build_graph(const fol::ClauseSet& cs, const NodeTypeConfig& cfg = {},
                       GraphNodeMap* node_map = nullptr);

/// One gather tuple of F_st / F_ts,d. Slot meaning depends on the family:
///   f_st[j]    j = symbol:  (a,b,c) = (parent, child1, child2)
///   f_ts_1[j]  j = parent:  (a,b,c) = (child1, child2, symbol)
///   f_ts_2[j]  j = child1:  (a,b,c) = (parent, child2, symbol)
///   f_ts_3[j]  j = child2:  (a,b,c) = (parent, child1, symbol)
struct GatherTuple {
  int32_t a = 0;
  int32_t b = 0;
  int32_t c = 0;
  int32_t g = -1;
  bool operator==(const GatherTuple&) const = default;
};

struct FIndex {
  std::vector<std::vector<int32_t>> f_ct;       // clause -> literal terms
  std::vector<std::vector<int32_t>> f_tc;       // term -> containing clauses
  std::vector<std::vector<GatherTuple>> f_st;   // symbol -> tuples
  std::vector<std::vector<GatherTuple>> f_ts1;  // term as parent
  std::vector<std::vector<GatherTuple>> f_ts2;  // term as child1
  std::vector<std::vector<GatherTuple>> f_ts3;  // term as child2
};

FIndex build_index(const Hypergraph& g);

/// Disjoint union of several graphs for minibatched evaluation. Node ids of
/// part k are shifted by the offsets below; all T0 sentinels collapse into
/// the single shared T0 of the union.
struct UnionOffsets {
  std::vector<int32_t> clause;  // add to part k's clause ids
  std::vector<int32_t> symbol;
  std::vector<int32_t> term;  // add to part k's nonzero term ids; T0 stays 0
};

Hypergraph disjoint_union(const std::vector<const Hypergraph*>& parts,
                          UnionOffsets* offsets = nullptr);

/// Type-preserving isomorphism up to node relabeling, decided by comparing
/// canonical forms after iterated signature refinement. Small risk of hash
/// collision; adequate for the typed test graphs this is used on.
bool graph_isomorphic(const Hypergraph& g1, const Hypergraph& g2);

}  // namespace invnet::graph
