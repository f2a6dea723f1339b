// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/fol/ir.hpp"

#include <sstream>

namespace invnet::fol {

namespace {

void print_term_raw_rec(const ClauseSet& cs, TermId t, std::ostream& out) {
  const TermNode& n = cs.arena.node(t);
  if (n.is_variable()) {
    out << "V" << n.var_id;
    return;
  }
  out << cs.symbols[n.symbol].name;
  auto args = cs.arena.args(t);
  if (!args.empty()) {
    out << '(';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out << ',';
      print_term_raw_rec(cs, args[i], out);
    }
    out << ')';
  }
}

void collect_vars(const ClauseSet& cs, TermId t, std::map<int32_t, std::string>& names) {
  const TermNode& n = cs.arena.node(t);
  if (n.is_variable()) {
    if (!names.count(n.var_id)) {
      std::string name = "X" + std::to_string(names.size());
      names.emplace(n.var_id, std::move(name));
    }
    return;
  }
  for (TermId a : cs.arena.args(t)) collect_vars(cs, a, names);
}

void print_term_pretty(const ClauseSet& cs, TermId t,
                       const std::map<int32_t, std::string>& names, std::ostream& out) {
  const TermNode& n = cs.arena.node(t);
  if (n.is_variable()) {
    out << names.at(n.var_id);
    return;
  }
  out << cs.symbols[n.symbol].name;
  auto args = cs.arena.args(t);
  if (!args.empty()) {
    out << '(';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out << ',';
      print_term_pretty(cs, args[i], names, out);
    }
    out << ')';
  }
}

}  // namespace

std::string print_term_raw(const ClauseSet& cs, TermId t) {
  std::ostringstream out;
  print_term_raw_rec(cs, t, out);
  return out.str();
}

std::string print_clause(const ClauseSet& cs, const Clause& c) {
  // Variable names are assigned per clause in first-occurrence order, walking
  // literals left to right, so round-tripping under per_clause scoping is
  // isomorphic even though raw var ids differ.
  std::map<int32_t, std::string> names;
  for (const Literal& lit : c.literals) collect_vars(cs, lit.atom, names);

  std::ostringstream out;
  out << "cnf(" << c.name << ", " << c.clause_type << ", ";
  if (c.literals.empty()) {
    out << "$false";
  } else {
    for (size_t i = 0; i < c.literals.size(); ++i) {
      if (i) out << " | ";
      const Literal& lit = c.literals[i];
      const TermNode& atom = cs.arena.node(lit.atom);
      const Symbol& head = cs.symbols[atom.symbol];
      if (head.name == "=" && head.arity == 2) {
        auto args = cs.arena.args(lit.atom);
        print_term_pretty(cs, args[0], names, out);
        out << (lit.negative() ? " != " : " = ");
        print_term_pretty(cs, args[1], names, out);
      } else {
        if (lit.negative()) out << '~';
        print_term_pretty(cs, lit.atom, names, out);
      }
    }
  }
  out << ").";
  return out.str();
}

std::string print_clause_set(const ClauseSet& cs) {
  std::string out;
  for (const Clause& c : cs.clauses) {
    out += print_clause(cs, c);
    out += '\n';
  }
  return out;
}

}  // namespace invnet::fol
