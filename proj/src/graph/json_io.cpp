// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/graph/json_io.hpp"

namespace invnet::graph {

nlohmann::json dump_graph(const Hypergraph& g) {
  nlohmann::json doc;
  doc["n_c"] = g.n_c;
  doc["n_s"] = g.n_s;
  doc["n_t"] = g.n_t;
  doc["node_types"] = {{"clauses", g.clause_type},
                       {"symbols", g.symbol_type},
                       {"terms", g.term_type}};
  auto& ct = doc["ct_edges"] = nlohmann::json::array();
  for (const CtEdge& e : g.ct_edges) ct.push_back({e.clause, e.term});
  auto& st = doc["st_edges"] = nlohmann::json::array();
  for (const StEdge& e : g.st_edges) st.push_back({e.symbol, e.parent, e.child1, e.child2, e.sign});
  return doc;
}

Hypergraph load_graph(const nlohmann::json& doc) {
  Hypergraph g;
  try {
    g.n_c = doc.at("n_c").get<int32_t>();
    g.n_s = doc.at("n_s").get<int32_t>();
    g.n_t = doc.at("n_t").get<int32_t>();
    g.clause_type = doc.at("node_types").at("clauses").get<std::vector<std::string>>();
    g.symbol_type = doc.at("node_types").at("symbols").get<std::vector<std::string>>();
    g.term_type = doc.at("node_types").at("terms").get<std::vector<std::string>>();
    for (const auto& e : doc.at("ct_edges"))
      g.ct_edges.push_back({e.at(0).get<int32_t>(), e.at(1).get<int32_t>()});
    for (const auto& e : doc.at("st_edges"))
      g.st_edges.push_back({e.at(0).get<int32_t>(), e.at(1).get<int32_t>(),
                            e.at(2).get<int32_t>(), e.at(3).get<int32_t>(),
                            e.at(4).get<int32_t>()});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad graph document: ") + e.what());
  }
  if (g.clause_type.size() != static_cast<size_t>(g.n_c) ||
      g.symbol_type.size() != static_cast<size_t>(g.n_s) ||
      g.term_type.size() != static_cast<size_t>(g.n_t))
    throw ConfigError("graph document node counts disagree with type arrays");
  return g;
}

}  // namespace invnet::graph
