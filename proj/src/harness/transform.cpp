// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/transform.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace invnet::harness {

std::string to_string(TransformKind k) {
  switch (k) {
    case TransformKind::rename_symbols: return "rename_symbols";
    case TransformKind::negate_predicate: return "negate_predicate";
    case TransformKind::permute_clauses: return "permute_clauses";
    case TransformKind::permute_literals: return "permute_literals";
    case TransformKind::swap_arguments: return "swap_arguments";
  }
  return "?";
}

std::optional<TransformKind> transform_kind_from_string(const std::string& name) {
  for (TransformKind k : {TransformKind::rename_symbols, TransformKind::negate_predicate,
                          TransformKind::permute_clauses, TransformKind::permute_literals,
                          TransformKind::swap_arguments})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

using TermKey = std::pair<fol::TermId, bool>;

fol::SymbolId find_symbol(const fol::ClauseSet& cs, const std::string& name) {
  auto id = cs.symbols.find(name);
  if (!id) throw ConfigError("transform: unknown symbol '" + name + "'");
  return *id;
}

// Rebuilds the table with renamed entries; interning in id order keeps every
// SymbolId stable, so the arena can be reused untouched.
fol::SymbolTable renamed_table(const fol::SymbolTable& in,
                               const std::map<std::string, std::string>& renaming) {
  for (const auto& [from, to] : renaming)
    if (!in.find(from)) throw ConfigError("transform: unknown symbol '" + from + "'");
  fol::SymbolTable out;
  std::set<std::string> used;
  for (fol::SymbolId id = 0; id < in.size(); ++id) {
    const fol::Symbol& s = in[id];
    auto it = renaming.find(s.name);
    const std::string& name = it == renaming.end() ? s.name : it->second;
    if (!used.insert(name).second)
      throw ConfigError("transform: renaming reuses the name '" + name + "'");
    out.intern(name, s.arity, s.kind, s.origin);
  }
  return out;
}

std::vector<int32_t> checked_permutation(const std::vector<int32_t>& order, size_t n,
                                         const char* what) {
  if (order.size() != n) throw ConfigError(std::string("transform: ") + what + " has wrong size");
  std::vector<char> seen(n, 0);
  for (int32_t v : order) {
    if (v < 0 || static_cast<size_t>(v) >= n || seen[static_cast<size_t>(v)])
      throw ConfigError(std::string("transform: ") + what + " is not a permutation");
    seen[static_cast<size_t>(v)] = 1;
  }
  return order;
}

}  // namespace

TransformApplication apply_transform(const fol::ClauseSet& cs, const Transform& t,
                                     const graph::NodeTypeConfig& cfg) {
  TransformApplication out;
  graph::GraphNodeMap before_map, after_map;
  out.before = graph::build_graph(cs, cfg, &before_map);

  std::vector<int32_t> clause_map(cs.clauses.size());
  std::iota(clause_map.begin(), clause_map.end(), 0);
  std::map<TermKey, TermKey> key_map;  // only non-identity entries
  std::vector<TermKey> flipped_keys;
  fol::SymbolId negated = fol::kNoSymbol;

  fol::ClauseSet next;
  next.scope = cs.scope;
  switch (t.kind) {
    case TransformKind::rename_symbols: {
      next.arena = cs.arena;
      next.symbols = renamed_table(cs.symbols, t.renaming);
      next.clauses = cs.clauses;
      break;
    }
    case TransformKind::negate_predicate: {
      fol::SymbolId p = find_symbol(cs, t.symbol);
      if (cs.symbols[p].kind != fol::SymbolKind::predicate)
        throw ConfigError("transform: '" + t.symbol + "' is not a predicate");
      negated = p;
      next.arena = cs.arena;
      next.symbols = cs.symbols;
      next.clauses = cs.clauses;
      for (fol::Clause& clause : next.clauses)
        for (fol::Literal& lit : clause.literals)
          if (next.arena.node(lit.atom).symbol == p) {
            bool was_negative = lit.negative();
            lit.polarity = was_negative ? fol::Polarity::positive : fol::Polarity::negative;
            key_map[{lit.atom, was_negative}] = {lit.atom, !was_negative};
            flipped_keys.push_back({lit.atom, was_negative});
          }
      break;
    }
    case TransformKind::permute_clauses: {
      auto order = checked_permutation(t.clause_order, cs.clauses.size(), "clause order");
      next.arena = cs.arena;
      next.symbols = cs.symbols;
      for (size_t k = 0; k < order.size(); ++k) {
        next.clauses.push_back(cs.clauses[static_cast<size_t>(order[k])]);
        clause_map[static_cast<size_t>(order[k])] = static_cast<int32_t>(k);
      }
      break;
    }
    case TransformKind::permute_literals: {
      if (t.literal_orders.size() != cs.clauses.size())
        throw ConfigError("transform: literal orders count differs from clause count");
      next.arena = cs.arena;
      next.symbols = cs.symbols;
      next.clauses = cs.clauses;
      for (size_t i = 0; i < next.clauses.size(); ++i) {
        auto order = checked_permutation(t.literal_orders[i], cs.clauses[i].literals.size(),
                                         "literal order");
        std::vector<fol::Literal> lits;
        for (int32_t j : order) lits.push_back(cs.clauses[i].literals[static_cast<size_t>(j)]);
        next.clauses[i].literals = std::move(lits);
      }
      break;
    }
    case TransformKind::swap_arguments: {
      fol::SymbolId p = find_symbol(cs, t.symbol);
      if (cs.symbols[p].kind != fol::SymbolKind::predicate || cs.symbols[p].arity != 2)
        throw ConfigError("transform: '" + t.symbol + "' is not a binary predicate");
      next.arena = cs.arena;
      next.symbols = cs.symbols;
      next.clauses = cs.clauses;
      for (fol::Clause& clause : next.clauses)
        for (fol::Literal& lit : clause.literals)
          if (next.arena.node(lit.atom).symbol == p) {
            auto args = next.arena.args(lit.atom);
            fol::TermId a = args[0], b = args[1];  // app() may grow the arena
            fol::TermId swapped = next.arena.app(p, {b, a});
            if (swapped != lit.atom) key_map[{lit.atom, lit.negative()}] = {swapped, lit.negative()};
            lit.atom = swapped;
          }
      break;
    }
  }

  out.cs = std::move(next);
  out.after = graph::build_graph(out.cs, cfg, &after_map);

  out.map.clause = std::move(clause_map);
  out.map.symbol.assign(static_cast<size_t>(out.before.n_s), -1);
  for (const auto& [sid, node] : before_map.symbol_node) {
    auto it = after_map.symbol_node.find(sid);
    if (it == after_map.symbol_node.end())
      throw Error("transform: symbol node lost its image");
    out.map.symbol[static_cast<size_t>(node)] = it->second;
  }
  out.map.term.assign(static_cast<size_t>(out.before.n_t), -1);
  out.map.term[graph::Hypergraph::kT0] = graph::Hypergraph::kT0;
  for (const auto& [key, node] : before_map.term_node) {
    auto mapped = key_map.find(key);
    const TermKey& target = mapped == key_map.end() ? key : mapped->second;
    auto it = after_map.term_node.find(target);
    if (it == after_map.term_node.end()) throw Error("transform: term node lost its image");
    out.map.term[static_cast<size_t>(node)] = it->second;
  }

  out.sign_flips.assign(static_cast<size_t>(out.before.n_t), 0);
  for (const TermKey& key : flipped_keys)
    out.sign_flips[static_cast<size_t>(before_map.term_node.at(key))] = 1;
  if (negated != fol::kNoSymbol) {
    auto it = before_map.symbol_node.find(negated);
    out.negated_symbol = it == before_map.symbol_node.end() ? -1 : it->second;
  }
  return out;
}

std::optional<Transform> random_transform(TransformKind kind, const fol::ClauseSet& cs,
                                          Rng& rng) {
  Transform t;
  t.kind = kind;
  switch (kind) {
    case TransformKind::rename_symbols: {
      std::vector<std::string> names;
      for (fol::SymbolId id = 0; id < cs.symbols.size(); ++id)
        names.push_back(cs.symbols[id].name);
      std::vector<std::string> shuffled = names;
      rng.shuffle(shuffled);
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] != shuffled[i]) t.renaming[names[i]] = shuffled[i];
      return t;
    }
    case TransformKind::negate_predicate: {
      std::set<fol::SymbolId> heads;
      for (const fol::Clause& c : cs.clauses)
        for (const fol::Literal& lit : c.literals) heads.insert(cs.arena.node(lit.atom).symbol);
      if (heads.empty()) return std::nullopt;
      std::vector<fol::SymbolId> pool(heads.begin(), heads.end());
      t.symbol = cs.symbols[pool[rng.below(pool.size())]].name;
      return t;
    }
    case TransformKind::permute_clauses: {
      t.clause_order.resize(cs.clauses.size());
      std::iota(t.clause_order.begin(), t.clause_order.end(), 0);
      rng.shuffle(t.clause_order);
      return t;
    }
    case TransformKind::permute_literals: {
      for (const fol::Clause& c : cs.clauses) {
        std::vector<int32_t> order(c.literals.size());
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        t.literal_orders.push_back(std::move(order));
      }
      return t;
    }
    case TransformKind::swap_arguments: {
      std::set<fol::SymbolId> eligible;
      for (const fol::Clause& c : cs.clauses)
        for (const fol::Literal& lit : c.literals) {
          const fol::TermNode& n = cs.arena.node(lit.atom);
          if (n.arity() == 2) {
            auto args = cs.arena.args(lit.atom);
            if (args[0] != args[1]) eligible.insert(n.symbol);
          }
        }
      if (eligible.empty()) return std::nullopt;
      std::vector<fol::SymbolId> pool(eligible.begin(), eligible.end());
      t.symbol = cs.symbols[pool[rng.below(pool.size())]].name;
      return t;
    }
  }
  return std::nullopt;
}

namespace {

std::string check_bijection(const std::vector<int32_t>& m, size_t n,
                            const std::vector<std::string>& tags_before,
                            const std::vector<std::string>& tags_after, const char* what) {
  std::vector<char> seen(n, 0);
  for (size_t i = 0; i < n; ++i) {
    int32_t j = m[i];
    if (j < 0 || static_cast<size_t>(j) >= n)
      return std::string(what) + " mapping out of range";
    if (seen[static_cast<size_t>(j)]) return std::string(what) + " mapping not injective";
    seen[static_cast<size_t>(j)] = 1;
    if (tags_before[i] != tags_after[static_cast<size_t>(j)])
      return std::string(what) + " node tag changes under the mapping";
  }
  return "";
}

std::string check_structure(const TransformApplication& ta) {
  const graph::Hypergraph& b = ta.before;
  const graph::Hypergraph& a = ta.after;
  if (a.n_c != b.n_c || a.n_s != b.n_s || a.n_t != b.n_t) return "node counts differ";
  if (a.ct_edges.size() != b.ct_edges.size() || a.st_edges.size() != b.st_edges.size())
    return "edge counts differ";
  std::string e = check_bijection(ta.map.clause, static_cast<size_t>(b.n_c), b.clause_type,
                                  a.clause_type, "clause");
  if (!e.empty()) return e;
  e = check_bijection(ta.map.symbol, static_cast<size_t>(b.n_s), b.symbol_type, a.symbol_type,
                      "symbol");
  if (!e.empty()) return e;
  e = check_bijection(ta.map.term, static_cast<size_t>(b.n_t), b.term_type, a.term_type, "term");
  if (!e.empty()) return e;

  std::vector<std::array<int32_t, 2>> ct_b, ct_a;
  for (const graph::CtEdge& edge : b.ct_edges)
    ct_b.push_back({ta.map.clause[static_cast<size_t>(edge.clause)],
                    ta.map.term[static_cast<size_t>(edge.term)]});
  for (const graph::CtEdge& edge : a.ct_edges) ct_a.push_back({edge.clause, edge.term});
  std::sort(ct_b.begin(), ct_b.end());
  std::sort(ct_a.begin(), ct_a.end());
  if (ct_b != ct_a) return "clause-term edges differ under the mapping";

  std::vector<std::array<int32_t, 5>> st_b, st_a;
  for (const graph::StEdge& edge : b.st_edges) {
    int32_t sign = ta.sign_flips[static_cast<size_t>(edge.parent)] ? -edge.sign : edge.sign;
    st_b.push_back({ta.map.symbol[static_cast<size_t>(edge.symbol)],
                    ta.map.term[static_cast<size_t>(edge.parent)],
                    ta.map.term[static_cast<size_t>(edge.child1)],
                    ta.map.term[static_cast<size_t>(edge.child2)], sign});
  }
  for (const graph::StEdge& edge : a.st_edges)
    st_a.push_back({edge.symbol, edge.parent, edge.child1, edge.child2, edge.sign});
  std::sort(st_b.begin(), st_b.end());
  std::sort(st_a.begin(), st_a.end());
  if (st_b != st_a) return "symbol-term edges differ under the mapping";
  return "";
}

}  // namespace

InvarianceReport check_invariance(const fol::ClauseSet& cs, const Transform& t,
                                  tensor::ParamStore<double>& params, const gnn::Dims& dims,
                                  double tol, const graph::NodeTypeConfig& cfg) {
  TransformApplication ta = apply_transform(cs, t, cfg);
  InvarianceReport report;
  report.tol = tol;
  report.structural_error = check_structure(ta);
  report.structural_ok = report.structural_error.empty();
  if (!report.structural_ok) return report;

  tensor::Tape<double> tape_b, tape_a;
  gnn::LayerState st_b = gnn::forward(tape_b, params, ta.before, dims, cfg);
  gnn::LayerState st_a = gnn::forward(tape_a, params, ta.after, dims, cfg);

  auto compare = [](const tensor::Array<double>& vb, const tensor::Array<double>& va,
                    const std::vector<int32_t>& map, int32_t negate_row) {
    double dev = 0.0;
    for (int r = 0; r < vb.rows; ++r) {
      double flip = r == negate_row ? -1.0 : 1.0;
      for (int k = 0; k < vb.cols; ++k)
        dev = std::max(dev, std::abs(vb.at(r, k) * flip - va.at(map[static_cast<size_t>(r)], k)));
    }
    return dev;
  };
  report.clause_dev = compare(tape_b.val(st_b.c), tape_a.val(st_a.c), ta.map.clause, -1);
  report.symbol_dev =
      compare(tape_b.val(st_b.s), tape_a.val(st_a.s), ta.map.symbol, ta.negated_symbol);
  report.term_dev = compare(tape_b.val(st_b.t), tape_a.val(st_a.t), ta.map.term, -1);
  return report;
}

}  // namespace invnet::harness
