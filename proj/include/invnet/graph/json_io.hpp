// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "invnet/graph/hypergraph.hpp"

namespace invnet::graph {

/// Serializes nodes with their type tags and edges in construction order.
/// Field names: n_c, n_s, n_t, node_types{clauses,symbols,terms}, ct_edges
/// [[clause,term],...], st_edges [[symbol,parent,child1,child2,sign],...].
nlohmann::json dump_graph(const Hypergraph& g);

Hypergraph load_graph(const nlohmann::json& doc);

}  // namespace invnet::graph
