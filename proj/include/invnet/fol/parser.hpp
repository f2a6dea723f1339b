// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "invnet/fol/ir.hpp"

namespace invnet::fol {

/// First-order formula tree as produced by the fof parser. Atom terms live in
/// the ClauseSet arena that is threaded through parsing and clausification;
/// quantified variables are resolved to unique arena var ids at parse time.
struct Formula {
  enum class Kind : uint8_t { atom, negation, conjunction, disjunction, implication, equivalence, forall, exists };

  Kind kind = Kind::atom;
  TermId atom = -1;                  // atom
  std::unique_ptr<Formula> left;     // unary/binary/quantified body
  std::unique_ptr<Formula> right;    // binary
  int32_t var = -1;                  // forall/exists
  std::string var_name;

  static std::unique_ptr<Formula> make_atom(TermId t);
  static std::unique_ptr<Formula> unary(Kind k, std::unique_ptr<Formula> f);
  static std::unique_ptr<Formula> binary(Kind k, std::unique_ptr<Formula> l, std::unique_ptr<Formula> r);
  static std::unique_ptr<Formula> quant(Kind k, int32_t var, std::string name, std::unique_ptr<Formula> body);
  std::unique_ptr<Formula> clone() const;
};

struct NamedFormula {
  std::string name;
  std::string role;
  std::unique_ptr<Formula> formula;
};

/// Parses a sequence of `cnf(name, role, disjunction).` units. Variables are
/// capitalized identifiers; `=` / `!=` parse as the binary predicate "=".
/// Roles are recorded as clause_type tags.
ClauseSet parse_cnf(std::string_view text, VariableScope scope = VariableScope::per_clause);

/// Parses `fof(name, role, formula).` units into formula trees, interning
/// atoms into `cs`. An unbound variable is a parse error.
std::vector<NamedFormula> parse_fof(std::string_view text, ClauseSet& cs);

/// Parses a single fof formula body (no `fof(...)` wrapper).
std::unique_ptr<Formula> parse_fof_formula(std::string_view text, ClauseSet& cs);

}  // namespace invnet::fol
