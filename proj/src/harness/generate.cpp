// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/generate.hpp"

namespace invnet::harness {

using namespace fol;

namespace {

struct Pools {
  std::vector<SymbolId> predicates;
  std::vector<SymbolId> functions;  // arity >= 1
  std::vector<SymbolId> constants;
};

TermId random_term(ClauseSet& cs, Rng& rng, const Pools& pools,
                   const std::vector<int32_t>& vars, int depth) {
  if (depth <= 0 || rng.chance(0.45)) {
    if (!vars.empty() && rng.chance(0.5))
      return cs.arena.variable(vars[rng.below(vars.size())]);
    return cs.arena.app(pools.constants[rng.below(pools.constants.size())], {});
  }
  SymbolId f = pools.functions[rng.below(pools.functions.size())];
  std::vector<TermId> args;
  for (int i = 0; i < cs.symbols[f].arity; ++i)
    args.push_back(random_term(cs, rng, pools, vars, depth - 1));
  return cs.arena.app(f, args);
}

}  // namespace

ClauseSet random_clause_set(Rng& rng, const RandomClauseSetOptions& opt) {
  ClauseSet cs;
  Pools pools;
  for (int i = 0; i < opt.n_predicates; ++i)
    pools.predicates.push_back(cs.symbols.intern("p" + std::to_string(i),
                                                 rng.range(0, opt.max_arity),
                                                 SymbolKind::predicate));
  for (int i = 0; i < opt.n_functions; ++i)
    pools.functions.push_back(cs.symbols.intern("f" + std::to_string(i),
                                                rng.range(1, opt.max_arity),
                                                SymbolKind::function));
  for (int i = 0; i < opt.n_constants; ++i)
    pools.constants.push_back(cs.symbols.intern("c" + std::to_string(i), 0,
                                                SymbolKind::function));
  SymbolId eq = cs.symbols.intern("=", 2, SymbolKind::predicate);

  int n_clauses = rng.range(1, opt.max_clauses);
  for (int ci = 0; ci < n_clauses; ++ci) {
    Clause clause;
    clause.name = "r" + std::to_string(ci + 1);
    clause.clause_type =
        (ci == n_clauses - 1 && rng.chance(opt.conjecture_prob)) ? "negated_conjecture" : "axiom";
    std::vector<int32_t> vars;
    int n_vars = rng.range(0, opt.max_vars_per_clause);
    for (int i = 0; i < n_vars; ++i) vars.push_back(cs.arena.fresh_var());
    int n_lits = rng.range(1, opt.max_literals);
    for (int li = 0; li < n_lits; ++li) {
      SymbolId head;
      if (rng.chance(opt.equality_prob)) {
        head = eq;
      } else {
        head = pools.predicates[rng.below(pools.predicates.size())];
      }
      std::vector<TermId> args;
      for (int i = 0; i < cs.symbols[head].arity; ++i)
        args.push_back(random_term(cs, rng, pools, vars, opt.max_term_depth - 1));
      Polarity pol = rng.chance(opt.negative_prob) ? Polarity::negative : Polarity::positive;
      clause.literals.push_back(Literal{pol, cs.arena.app(head, args)});
    }
    cs.clauses.push_back(std::move(clause));
  }
  return cs;
}

}  // namespace invnet::harness
