// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/graph/hypergraph.hpp"

#include <algorithm>
#include <set>

namespace invnet::graph {

namespace {

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

std::vector<std::string> NodeTypeConfig::clause_tags() const {
  std::vector<std::string> tags{clause_fallback_tag};
  for (const auto& [role, tag] : clause_tag_by_role) push_unique(tags, tag);
  return tags;
}

std::vector<std::string> NodeTypeConfig::term_tags() const {
  std::vector<std::string> tags{t0_tag, literal_tag, term_tag, var_fallback_tag};
  for (const auto& [ctag, vtag] : var_tag_by_clause_tag) push_unique(tags, vtag);
  return tags;
}

std::vector<std::string> NodeTypeConfig::symbol_tags() const {
  return {predicate_tag, function_tag};
}

NodeTypeConfig NodeTypeConfig::tableaux() {
  NodeTypeConfig cfg;
  cfg.clause_tag_by_role = {{"goal", "goal"}, {"path", "path"}};
  cfg.clause_fallback_tag = "axiom";
  cfg.var_tag_by_clause_tag = {{"goal", "tableaux_var"}, {"path", "tableaux_var"}};
  cfg.var_fallback_tag = "axiom_var";
  return cfg;
}

namespace {

class Builder {
 public:
  Builder(const fol::ClauseSet& cs, const NodeTypeConfig& cfg, Hypergraph& g, GraphNodeMap& map)
      : cs_(cs), cfg_(cfg), g_(g), map_(map) {}

  void run() {
    g_.term_type.push_back(cfg_.t0_tag);
    for (const fol::Clause& clause : cs_.clauses) {
      int32_t ci = g_.n_c++;
      std::string ctag = cfg_.clause_tag(clause.clause_type);
      g_.clause_type.push_back(ctag);
      for (const fol::Literal& lit : clause.literals) {
        int32_t tn = intern_literal(lit, ctag);
        g_.ct_edges.push_back({ci, tn});
      }
    }
    g_.n_t = static_cast<int32_t>(g_.term_type.size());
    g_.n_s = static_cast<int32_t>(g_.symbol_type.size());
  }

 private:
  int32_t intern_literal(const fol::Literal& lit, const std::string& ctag) {
    // A positive literal shares its node with the plain atom term; a negative
    // literal is a node of its own and the unnegated atom is not added.
    return intern_term(lit.atom, lit.negative(), cfg_.literal_tag, ctag);
  }

  int32_t intern_term(fol::TermId t, bool negated, const std::string& tag,
                      const std::string& ctag) {
    auto key = std::make_pair(t, negated);
    auto it = map_.term_node.find(key);
    if (it != map_.term_node.end()) return it->second;

    const fol::TermNode& node = cs_.arena.node(t);
    if (node.is_variable()) {
      int32_t idx = new_term_node(cfg_.var_tag(ctag));
      map_.term_node.emplace(key, idx);
      return idx;
    }
    int32_t idx = new_term_node(tag);
    map_.term_node.emplace(key, idx);
    int32_t sym = intern_symbol(node.symbol);
    std::vector<int32_t> kids;
    for (fol::TermId a : cs_.arena.args(t))
      kids.push_back(intern_term(a, false, cfg_.term_tag, ctag));
    int32_t sign = negated ? 1 : -1;
    if (kids.empty()) {
      g_.st_edges.push_back({sym, idx, Hypergraph::kT0, Hypergraph::kT0, sign});
    } else if (kids.size() == 1) {
      g_.st_edges.push_back({sym, idx, kids[0], Hypergraph::kT0, sign});
    } else {
      for (size_t k = 0; k + 1 < kids.size(); ++k)
        g_.st_edges.push_back({sym, idx, kids[k], kids[k + 1], sign});
    }
    return idx;
  }

  int32_t intern_symbol(fol::SymbolId s) {
    auto it = map_.symbol_node.find(s);
    if (it != map_.symbol_node.end()) return it->second;
    int32_t idx = static_cast<int32_t>(g_.symbol_type.size());
    const fol::Symbol& sym = cs_.symbols[s];
    g_.symbol_type.push_back(sym.kind == fol::SymbolKind::predicate ? cfg_.predicate_tag
                                                                    : cfg_.function_tag);
    map_.symbol_node.emplace(s, idx);
    return idx;
  }

  int32_t new_term_node(const std::string& tag) {
    int32_t idx = static_cast<int32_t>(g_.term_type.size());
    g_.term_type.push_back(tag);
    return idx;
  }

  const fol::ClauseSet& cs_;
  const NodeTypeConfig& cfg_;
  Hypergraph& g_;
  GraphNodeMap& map_;
};

}  // namespace

Hypergraph build_graph(const fol::ClauseSet& cs, const NodeTypeConfig& cfg,
                       GraphNodeMap* node_map) {
  Hypergraph g;
  GraphNodeMap local;
  GraphNodeMap& map = node_map ? *node_map : local;
  Builder(cs, cfg, g, map).run();
  return g;
}

Hypergraph disjoint_union(const std::vector<const Hypergraph*>& parts,
                          UnionOffsets* offsets) {
  Hypergraph u;
  if (!parts.empty()) u.term_type = {parts[0]->term_type.at(0)};
  UnionOffsets local;
  for (const Hypergraph* part : parts) {
    const int32_t co = u.n_c, so = u.n_s, to = u.n_t - 1;
    local.clause.push_back(co);
    local.symbol.push_back(so);
    local.term.push_back(to);
    auto term_id = [to](int32_t t) { return t == Hypergraph::kT0 ? Hypergraph::kT0 : t + to; };
    for (const CtEdge& e : part->ct_edges)
      u.ct_edges.push_back({e.clause + co, term_id(e.term)});
    for (const StEdge& e : part->st_edges)
      u.st_edges.push_back(
          {e.symbol + so, term_id(e.parent), term_id(e.child1), term_id(e.child2), e.sign});
    u.clause_type.insert(u.clause_type.end(), part->clause_type.begin(),
                         part->clause_type.end());
    u.symbol_type.insert(u.symbol_type.end(), part->symbol_type.begin(),
                         part->symbol_type.end());
    u.term_type.insert(u.term_type.end(), part->term_type.begin() + 1, part->term_type.end());
    u.n_c += part->n_c;
    u.n_s += part->n_s;
    u.n_t += part->n_t - 1;
  }
  if (offsets) *offsets = std::move(local);
  return u;
}

FIndex build_index(const Hypergraph& g) {
  FIndex idx;
  idx.f_ct.resize(static_cast<size_t>(g.n_c));
  idx.f_tc.resize(static_cast<size_t>(g.n_t));
  idx.f_st.resize(static_cast<size_t>(g.n_s));
  idx.f_ts1.resize(static_cast<size_t>(g.n_t));
  idx.f_ts2.resize(static_cast<size_t>(g.n_t));
  idx.f_ts3.resize(static_cast<size_t>(g.n_t));
  for (const CtEdge& e : g.ct_edges) {
    idx.f_ct[static_cast<size_t>(e.clause)].push_back(e.term);
    idx.f_tc[static_cast<size_t>(e.term)].push_back(e.clause);
  }
  for (const StEdge& e : g.st_edges) {
    idx.f_st[static_cast<size_t>(e.symbol)].push_back({e.parent, e.child1, e.child2, e.sign});
    idx.f_ts1[static_cast<size_t>(e.parent)].push_back({e.child1, e.child2, e.symbol, e.sign});
    if (e.child1 != Hypergraph::kT0)
      idx.f_ts2[static_cast<size_t>(e.child1)].push_back({e.parent, e.child2, e.symbol, e.sign});
    if (e.child2 != Hypergraph::kT0)
      idx.f_ts3[static_cast<size_t>(e.child2)].push_back({e.parent, e.child1, e.symbol, e.sign});
  }
  return idx;
}

namespace {

// Node signatures live in one array: clauses, then symbols, then terms.
struct SigView {
  const Hypergraph& g;
  size_t clause_off = 0, symbol_off = 0, term_off = 0;

  explicit SigView(const Hypergraph& graph) : g(graph) {
    clause_off = 0;
    symbol_off = static_cast<size_t>(g.n_c);
    term_off = symbol_off + static_cast<size_t>(g.n_s);
  }
  size_t total() const { return term_off + static_cast<size_t>(g.n_t); }
};

std::vector<uint64_t> refine_signatures(const Hypergraph& g) {
  SigView v(g);
  std::vector<uint64_t> sig(v.total());
  for (int32_t i = 0; i < g.n_c; ++i)
    sig[v.clause_off + static_cast<size_t>(i)] =
        hash_mix(1, fnv1a(g.clause_type[static_cast<size_t>(i)]));
  for (int32_t i = 0; i < g.n_s; ++i)
    sig[v.symbol_off + static_cast<size_t>(i)] =
        hash_mix(2, fnv1a(g.symbol_type[static_cast<size_t>(i)]));
  for (int32_t i = 0; i < g.n_t; ++i)
    sig[v.term_off + static_cast<size_t>(i)] =
        hash_mix(3, fnv1a(g.term_type[static_cast<size_t>(i)]));

  int rounds = 2 + static_cast<int>(std::min<size_t>(v.total(), 64));
  std::vector<std::vector<uint64_t>> incoming(v.total());
  for (int r = 0; r < rounds; ++r) {
    for (auto& in : incoming) in.clear();
    auto cs = [&](int32_t i) { return sig[v.clause_off + static_cast<size_t>(i)]; };
    auto ss = [&](int32_t i) { return sig[v.symbol_off + static_cast<size_t>(i)]; };
    auto ts = [&](int32_t i) { return sig[v.term_off + static_cast<size_t>(i)]; };
    for (const CtEdge& e : g.ct_edges) {
      incoming[v.clause_off + static_cast<size_t>(e.clause)].push_back(hash_mix(11, ts(e.term)));
      incoming[v.term_off + static_cast<size_t>(e.term)].push_back(hash_mix(12, cs(e.clause)));
    }
    for (const StEdge& e : g.st_edges) {
      uint64_t sign = static_cast<uint64_t>(e.sign + 2);
      uint64_t core = hash_mix(hash_mix(hash_mix(ts(e.parent), ts(e.child1)), ts(e.child2)), sign);
      incoming[v.symbol_off + static_cast<size_t>(e.symbol)].push_back(hash_mix(13, core));
      uint64_t sym = ss(e.symbol);
      incoming[v.term_off + static_cast<size_t>(e.parent)].push_back(
          hash_mix(14, hash_mix(hash_mix(hash_mix(sym, ts(e.child1)), ts(e.child2)), sign)));
      if (e.child1 != Hypergraph::kT0)
        incoming[v.term_off + static_cast<size_t>(e.child1)].push_back(
            hash_mix(15, hash_mix(hash_mix(hash_mix(sym, ts(e.parent)), ts(e.child2)), sign)));
      if (e.child2 != Hypergraph::kT0)
        incoming[v.term_off + static_cast<size_t>(e.child2)].push_back(
            hash_mix(16, hash_mix(hash_mix(hash_mix(sym, ts(e.parent)), ts(e.child1)), sign)));
    }
    std::vector<uint64_t> next(v.total());
    for (size_t i = 0; i < v.total(); ++i) {
      std::sort(incoming[i].begin(), incoming[i].end());
      uint64_t h = hash_mix(sig[i], 0x51ab);
      for (uint64_t m : incoming[i]) h = hash_mix(h, m);
      next[i] = h;
    }
    sig.swap(next);
  }
  return sig;
}

std::vector<uint64_t> canonical_form(const Hypergraph& g) {
  SigView v(g);
  std::vector<uint64_t> sig = refine_signatures(g);
  std::vector<uint64_t> out;
  auto cs = [&](int32_t i) { return sig[v.clause_off + static_cast<size_t>(i)]; };
  auto ss = [&](int32_t i) { return sig[v.symbol_off + static_cast<size_t>(i)]; };
  auto ts = [&](int32_t i) { return sig[v.term_off + static_cast<size_t>(i)]; };
  for (const CtEdge& e : g.ct_edges) out.push_back(hash_mix(cs(e.clause), ts(e.term)));
  for (const StEdge& e : g.st_edges)
    out.push_back(hash_mix(
        hash_mix(hash_mix(hash_mix(ss(e.symbol), ts(e.parent)), ts(e.child1)), ts(e.child2)),
        static_cast<uint64_t>(e.sign + 2)));
  // Node signature multisets per class, separated by markers.
  out.push_back(0xC0);
  for (int32_t i = 0; i < g.n_c; ++i) out.push_back(cs(i));
  out.push_back(0x50);
  for (int32_t i = 0; i < g.n_s; ++i) out.push_back(ss(i));
  out.push_back(0x70);
  for (int32_t i = 0; i < g.n_t; ++i) out.push_back(ts(i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool graph_isomorphic(const Hypergraph& g1, const Hypergraph& g2) {
  if (g1.n_c != g2.n_c || g1.n_s != g2.n_s || g1.n_t != g2.n_t) return false;
  if (g1.ct_edges.size() != g2.ct_edges.size() || g1.st_edges.size() != g2.st_edges.size())
    return false;
  return canonical_form(g1) == canonical_form(g2);
}

}  // namespace invnet::graph
