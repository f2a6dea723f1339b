// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "invnet/fol/parser.hpp"
#include "invnet/graph/hypergraph.hpp"
#include "invnet/graph/json_io.hpp"
#include "invnet/harness/generate.hpp"

using namespace invnet;
using namespace invnet::graph;

namespace {

bool same_multiset(std::vector<StEdge> a, std::vector<StEdge> b) {
  auto lt = [](const StEdge& x, const StEdge& y) {
    return std::tie(x.symbol, x.parent, x.child1, x.child2, x.sign) <
           std::tie(y.symbol, y.parent, y.child1, y.child2, y.sign);
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

// Independent count of expected st edges: every distinct non-variable
// term/literal node contributes max(1, arity - 1).
size_t expected_st_edges(const fol::ClauseSet& cs) {
  std::set<std::pair<fol::TermId, bool>> seen;
  size_t total = 0;
  auto walk = [&](auto&& self, fol::TermId t, bool neg) -> void {
    if (!seen.insert({t, neg}).second) return;
    const fol::TermNode& n = cs.arena.node(t);
    if (n.is_variable()) return;
    total += static_cast<size_t>(std::max(1, n.arity() - 1));
    for (fol::TermId a : cs.arena.args(t)) self(self, a, false);
  };
  for (const fol::Clause& c : cs.clauses)
    for (const fol::Literal& lit : c.literals) walk(walk, lit.atom, lit.negative());
  return total;
}

}  // namespace

TEST_CASE("build_graph encodes unary application with T0 padding") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, p(c)).");
  GraphNodeMap map;
  Hypergraph g = build_graph(cs, {}, &map);
  CHECK(g.n_c == 1);
  CHECK(g.n_s == 2);
  CHECK(g.n_t == 3);  // T0, p(c), c

  int32_t p = map.symbol_node.at(*cs.symbols.find("p"));
  int32_t c_sym = map.symbol_node.at(*cs.symbols.find("c"));
  int32_t lit = map.term_node.at({cs.clauses[0].literals[0].atom, false});
  int32_t c_term = map.term_node.at({cs.arena.args(cs.clauses[0].literals[0].atom)[0], false});

  REQUIRE(g.ct_edges.size() == 1);
  CHECK(g.ct_edges[0] == CtEdge{0, lit});
  CHECK(same_multiset(g.st_edges, {{p, lit, c_term, Hypergraph::kT0, -1},
                                   {c_sym, c_term, Hypergraph::kT0, Hypergraph::kT0, -1}}));
  CHECK(g.term_type[0] == "t0");
  CHECK(g.term_type[static_cast<size_t>(lit)] == "literal");
  CHECK(g.term_type[static_cast<size_t>(c_term)] == "term");
  CHECK(g.symbol_type[static_cast<size_t>(p)] == "predicate");
  CHECK(g.symbol_type[static_cast<size_t>(c_sym)] == "function");
}

TEST_CASE("build_graph marks negative literal parents with sign +1") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, ~q).");
  Hypergraph g = build_graph(cs);
  CHECK(g.n_t == 2);  // T0 and the ~q literal node; no unnegated q node
  REQUIRE(g.st_edges.size() == 1);
  CHECK(g.st_edges[0] == StEdge{0, 1, Hypergraph::kT0, Hypergraph::kT0, 1});
}

TEST_CASE("build_graph chains consecutive argument pairs for wide terms") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, p(f(X,Y,Z))).");
  GraphNodeMap map;
  Hypergraph g = build_graph(cs, {}, &map);
  fol::TermId atom = cs.clauses[0].literals[0].atom;
  fol::TermId f_term = cs.arena.args(atom)[0];
  auto args = cs.arena.args(f_term);
  int32_t fn = map.term_node.at({f_term, false});
  int32_t f_sym = map.symbol_node.at(*cs.symbols.find("f"));
  int32_t x = map.term_node.at({args[0], false});
  int32_t y = map.term_node.at({args[1], false});
  int32_t z = map.term_node.at({args[2], false});

  std::vector<StEdge> from_f;
  for (const StEdge& e : g.st_edges)
    if (e.symbol == f_sym) from_f.push_back(e);
  CHECK(same_multiset(from_f, {{f_sym, fn, x, y, -1}, {f_sym, fn, y, z, -1}}));
  CHECK(g.term_type[static_cast<size_t>(x)] == "var");
}

TEST_CASE("positive literal shares its node with the atom term") {
  // p(c) as a literal in one clause; the same atom cannot recur as a subterm,
  // but the same positive literal in two clauses is one node.
  fol::ClauseSet cs =
      fol::parse_cnf("cnf(c1,axiom, p(c)). cnf(c2,axiom, p(c) | ~p(c)).");
  Hypergraph g = build_graph(cs);
  // Nodes: T0, p(c), c, ~p(c).
  CHECK(g.n_t == 4);
  REQUIRE(g.ct_edges.size() == 3);
  CHECK(g.ct_edges[0].term == g.ct_edges[1].term);
  CHECK(g.ct_edges[1].term != g.ct_edges[2].term);
}

TEST_CASE("build_index materializes the six gather families") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, p(c)).");
  GraphNodeMap map;
  Hypergraph g = build_graph(cs, {}, &map);
  FIndex idx = build_index(g);

  int32_t p = map.symbol_node.at(*cs.symbols.find("p"));
  int32_t c_sym = map.symbol_node.at(*cs.symbols.find("c"));
  int32_t lit = map.term_node.at({cs.clauses[0].literals[0].atom, false});
  int32_t c_term = map.term_node.at({cs.arena.args(cs.clauses[0].literals[0].atom)[0], false});

  CHECK(idx.f_ct[0] == std::vector<int32_t>{lit});
  CHECK(idx.f_tc[static_cast<size_t>(lit)] == std::vector<int32_t>{0});
  CHECK(idx.f_tc[static_cast<size_t>(c_term)].empty());
  CHECK(idx.f_st[static_cast<size_t>(p)] ==
        std::vector<GatherTuple>{{lit, c_term, Hypergraph::kT0, -1}});
  CHECK(idx.f_st[static_cast<size_t>(c_sym)] ==
        std::vector<GatherTuple>{{c_term, Hypergraph::kT0, Hypergraph::kT0, -1}});
  CHECK(idx.f_ts1[static_cast<size_t>(lit)] ==
        std::vector<GatherTuple>{{c_term, Hypergraph::kT0, p, -1}});
  CHECK(idx.f_ts2[static_cast<size_t>(c_term)] ==
        std::vector<GatherTuple>{{lit, Hypergraph::kT0, p, -1}});
  CHECK(idx.f_ts3[static_cast<size_t>(lit)].empty());
}

TEST_CASE("build_index preserves duplicate literals as duplicate entries") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, p(c) | p(c)).");
  Hypergraph g = build_graph(cs);
  FIndex idx = build_index(g);
  REQUIRE(idx.f_ct[0].size() == 2);
  CHECK(idx.f_ct[0][0] == idx.f_ct[0][1]);
}

TEST_CASE("build_index on an edgeless graph yields empty families") {
  fol::ClauseSet cs;
  Hypergraph g = build_graph(cs);
  FIndex idx = build_index(g);
  CHECK(idx.f_ct.empty());
  CHECK(idx.f_st.empty());
  REQUIRE(idx.f_ts1.size() == 1);  // T0 only
  CHECK(idx.f_ts1[0].empty());
  CHECK(idx.f_tc[0].empty());
}

TEST_CASE("graph_isomorphic identifies shared-variable patterns") {
  fol::ClauseSet a = fol::parse_cnf("cnf(c1,axiom, p(f(X,Y,X))).");
  fol::ClauseSet b = fol::parse_cnf("cnf(c1,axiom, p(f(Y,X,Y))).");
  CHECK(graph_isomorphic(build_graph(a), build_graph(b)));

  fol::ClauseSet c = fol::parse_cnf("cnf(c1,axiom, p(f(X,X,Y))).");
  CHECK(!graph_isomorphic(build_graph(a), build_graph(c)));
}

TEST_CASE("graph_isomorphic holds for identity and breaks on sign") {
  fol::ClauseSet a = fol::parse_cnf("cnf(c1,axiom, p(c)).");
  Hypergraph g = build_graph(a);
  CHECK(graph_isomorphic(g, g));
  fol::ClauseSet b = fol::parse_cnf("cnf(c1,axiom, ~p(c)).");
  CHECK(!graph_isomorphic(g, build_graph(b)));
}

TEST_CASE("graph_isomorphic is insensitive to names and orders") {
  fol::ClauseSet a = fol::parse_cnf(
      "cnf(c1,axiom, p(X) | ~q(f(X,a))). cnf(c2,axiom, q(a) | p(b)).");
  fol::ClauseSet renamed = fol::parse_cnf(
      "cnf(c1,axiom, zip(V) | ~zap(g(V,u))). cnf(c2,axiom, zap(u) | zip(w)).");
  fol::ClauseSet lit_perm = fol::parse_cnf(
      "cnf(c1,axiom, ~q(f(X,a)) | p(X)). cnf(c2,axiom, p(b) | q(a)).");
  fol::ClauseSet clause_perm = fol::parse_cnf(
      "cnf(c2,axiom, q(a) | p(b)). cnf(c1,axiom, p(X) | ~q(f(X,a))).");
  Hypergraph g = build_graph(a);
  CHECK(graph_isomorphic(g, build_graph(renamed)));
  CHECK(graph_isomorphic(g, build_graph(lit_perm)));
  CHECK(graph_isomorphic(g, build_graph(clause_perm)));

  fol::ClauseSet different = fol::parse_cnf(
      "cnf(c1,axiom, p(X) | ~q(f(a,X))). cnf(c2,axiom, q(a) | p(b)).");
  CHECK(!graph_isomorphic(g, build_graph(different)));
}

TEST_CASE("random graphs satisfy the edge-count, sign, and T0 laws") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    fol::ClauseSet cs = harness::random_clause_set(rng);
    GraphNodeMap map;
    Hypergraph g = build_graph(cs, {}, &map);

    CHECK(g.st_edges.size() == expected_st_edges(cs));

    std::set<int32_t> neg_literal_nodes;
    for (const auto& [key, node] : map.term_node)
      if (key.second) neg_literal_nodes.insert(node);
    for (const StEdge& e : g.st_edges) {
      CHECK(e.sign == (neg_literal_nodes.count(e.parent) ? 1 : -1));
      CHECK(e.parent != Hypergraph::kT0);
    }
    for (const CtEdge& e : g.ct_edges) CHECK(e.term != Hypergraph::kT0);

    // build_index must cover each st edge exactly once per family.
    FIndex idx = build_index(g);
    size_t st_total = 0, ts1_total = 0;
    for (const auto& v : idx.f_st) st_total += v.size();
    for (const auto& v : idx.f_ts1) ts1_total += v.size();
    CHECK(st_total == g.st_edges.size());
    CHECK(ts1_total == g.st_edges.size());
  }
}

TEST_CASE("tableaux node typing varies the variable tag by clause tag") {
  fol::ClauseSet cs = fol::parse_cnf(
      "cnf(c1,goal, p(X)). cnf(c2,axiom, p(Y)).");
  GraphNodeMap map;
  Hypergraph g = build_graph(cs, NodeTypeConfig::tableaux(), &map);
  CHECK(g.clause_type[0] == "goal");
  CHECK(g.clause_type[1] == "axiom");
  int32_t x = map.term_node.at({cs.arena.args(cs.clauses[0].literals[0].atom)[0], false});
  int32_t y = map.term_node.at({cs.arena.args(cs.clauses[1].literals[0].atom)[0], false});
  CHECK(g.term_type[static_cast<size_t>(x)] == "tableaux_var");
  CHECK(g.term_type[static_cast<size_t>(y)] == "axiom_var");
}

TEST_CASE("dump_graph counts an empty clause set as the lone T0 node") {
  fol::ClauseSet cs;
  nlohmann::json doc = dump_graph(build_graph(cs));
  CHECK(doc["n_c"] == 0);
  CHECK(doc["n_s"] == 0);
  CHECK(doc["n_t"] == 1);
  CHECK(doc["ct_edges"].empty());
  CHECK(doc["st_edges"].empty());
}

TEST_CASE("dump_graph emits the documented counts for a unit clause") {
  fol::ClauseSet cs = fol::parse_cnf("cnf(c1,axiom, p(c)).");
  nlohmann::json doc = dump_graph(build_graph(cs));
  CHECK(doc["n_c"] == 1);
  CHECK(doc["n_s"] == 2);
  CHECK(doc["n_t"] == 3);
  CHECK(doc["ct_edges"].size() == 1);
  CHECK(doc["st_edges"].size() == 2);
  CHECK(doc["node_types"]["terms"][0] == "t0");
}

TEST_CASE("graph JSON round-trips losslessly") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    fol::ClauseSet cs = harness::random_clause_set(rng);
    Hypergraph g = build_graph(cs);
    Hypergraph back = load_graph(dump_graph(g));
    CHECK(back.n_c == g.n_c);
    CHECK(back.n_s == g.n_s);
    CHECK(back.n_t == g.n_t);
    CHECK(back.ct_edges == g.ct_edges);
    CHECK(back.st_edges == g.st_edges);
    CHECK(back.clause_type == g.clause_type);
    CHECK(back.symbol_type == g.symbol_type);
    CHECK(back.term_type == g.term_type);
    CHECK(graph_isomorphic(back, g));
  }
}

TEST_CASE("printed clause sets rebuild isomorphic graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    fol::ClauseSet cs = harness::random_clause_set(rng);
    fol::ClauseSet reparsed = fol::parse_cnf(fol::print_clause_set(cs));
    CHECK(graph_isomorphic(build_graph(cs), build_graph(reparsed)));
  }
}
