// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "invnet/fol/clausify.hpp"
#include "invnet/fol/ir.hpp"
#include "invnet/fol/parser.hpp"
#include "invnet/fol/stats.hpp"
#include "prop_oracle.hpp"

using namespace invnet;
using namespace invnet::fol;

namespace {

const Symbol& symbol_named(const ClauseSet& cs, const std::string& name) {
  auto id = cs.symbols.find(name);
  REQUIRE(id.has_value());
  return cs.symbols[*id];
}

std::set<int32_t> clause_vars(const ClauseSet& cs, const Clause& c) {
  std::set<int32_t> vars;
  auto walk = [&](auto&& self, TermId t) -> void {
    const TermNode& n = cs.arena.node(t);
    if (n.is_variable()) {
      vars.insert(n.var_id);
      return;
    }
    for (TermId a : cs.arena.args(t)) self(self, a);
  };
  for (const Literal& lit : c.literals) walk(walk, lit.atom);
  return vars;
}

}  // namespace

TEST_CASE("parse_cnf builds literals, symbols, and shared variables") {
  ClauseSet cs = parse_cnf("cnf(c1,axiom, p(X) | ~q(f(X))).");
  REQUIRE(cs.clauses.size() == 1);
  const Clause& c = cs.clauses[0];
  REQUIRE(c.literals.size() == 2);
  CHECK(c.name == "c1");
  CHECK(c.clause_type == "axiom");
  CHECK(c.literals[0].polarity == Polarity::positive);
  CHECK(c.literals[1].polarity == Polarity::negative);

  const Symbol& p = symbol_named(cs, "p");
  CHECK(p.arity == 1);
  CHECK(p.kind == SymbolKind::predicate);
  const Symbol& q = symbol_named(cs, "q");
  CHECK(q.arity == 1);
  CHECK(q.kind == SymbolKind::predicate);
  const Symbol& f = symbol_named(cs, "f");
  CHECK(f.arity == 1);
  CHECK(f.kind == SymbolKind::function);

  TermId x_in_p = cs.arena.args(c.literals[0].atom)[0];
  TermId f_of_x = cs.arena.args(c.literals[1].atom)[0];
  TermId x_in_f = cs.arena.args(f_of_x)[0];
  CHECK(x_in_p == x_in_f);
}

TEST_CASE("parse_cnf keeps same-named variables distinct across clauses") {
  ClauseSet cs = parse_cnf("cnf(c1,axiom, p(X)). cnf(c2,axiom, ~p(X)).");
  REQUIRE(cs.clauses.size() == 2);
  TermId x1 = cs.arena.args(cs.clauses[0].literals[0].atom)[0];
  TermId x2 = cs.arena.args(cs.clauses[1].literals[0].atom)[0];
  CHECK(x1 != x2);

  ClauseSet shared = parse_cnf("cnf(c1,axiom, p(X)). cnf(c2,axiom, ~p(X)).",
                               VariableScope::shared_named);
  TermId y1 = shared.arena.args(shared.clauses[0].literals[0].atom)[0];
  TermId y2 = shared.arena.args(shared.clauses[1].literals[0].atom)[0];
  CHECK(y1 == y2);
}

TEST_CASE("parse_cnf interns repeated subterms to one node") {
  ClauseSet cs = parse_cnf("cnf(c1,axiom, p(f(X), f(X))).");
  const Clause& c = cs.clauses[0];
  auto args = cs.arena.args(c.literals[0].atom);
  REQUIRE(args.size() == 2);
  CHECK(args[0] == args[1]);
}

TEST_CASE("parse_cnf reports positions and conflicts") {
  CHECK_THROWS_AS(parse_cnf("cnf(c1,axiom, p(X) | )."), ParseError);
  CHECK_THROWS_AS(parse_cnf("cnf(c1,axiom, p(a)). cnf(c2,axiom, p(a,b))."), Error);
  CHECK_THROWS_AS(parse_cnf("cnf(c1,axiom, p(p(a)))."), Error);
  try {
    parse_cnf("cnf(c1,axiom,\n p(X) | | q(X)).");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
}

TEST_CASE("parse_cnf handles equality as an ordinary binary predicate") {
  ClauseSet cs = parse_cnf("cnf(c1,axiom, f(X) = X | a != b).");
  const Clause& c = cs.clauses[0];
  REQUIRE(c.literals.size() == 2);
  CHECK(c.literals[0].polarity == Polarity::positive);
  CHECK(c.literals[1].polarity == Polarity::negative);
  const Symbol& eq = symbol_named(cs, "=");
  CHECK(eq.arity == 2);
  CHECK(eq.kind == SymbolKind::predicate);
  CHECK(symbol_named(cs, "a").kind == SymbolKind::function);
  CHECK(symbol_named(cs, "f").kind == SymbolKind::function);
}

TEST_CASE("parse_fof builds quantified formula trees") {
  ClauseSet cs;
  auto fs = parse_fof("fof(a,axiom, ![X]: p(X)).", cs);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].name == "a");
  CHECK(fs[0].role == "axiom");
  CHECK(fs[0].formula->kind == Formula::Kind::forall);
  CHECK(fs[0].formula->left->kind == Formula::Kind::atom);
}

TEST_CASE("parse_fof handles existential conjunction and conjecture role") {
  ClauseSet cs;
  auto fs = parse_fof("fof(a,conjecture, ?[X]: (p(X) & q(X))).", cs);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].role == "conjecture");
  CHECK(fs[0].formula->kind == Formula::Kind::exists);
  CHECK(fs[0].formula->left->kind == Formula::Kind::conjunction);
}

TEST_CASE("parse_fof rejects unbound variables") {
  ClauseSet cs;
  CHECK_THROWS_AS(parse_fof("fof(a,axiom, p(X)).", cs), ParseError);
}

TEST_CASE("clausify skolemizes a closed existential to a constant") {
  ClauseSet cs = clausify_text("fof(a,axiom, ?[X]: p(X)).");
  REQUIRE(cs.clauses.size() == 1);
  CHECK(print_clause(cs, cs.clauses[0]) == "cnf(a_1, axiom, p(skolem1)).");
  const Symbol& sk = symbol_named(cs, "skolem1");
  CHECK(sk.arity == 0);
  CHECK(sk.kind == SymbolKind::function);
  CHECK(sk.origin == SymbolOrigin::skolem);
}

TEST_CASE("clausify gives skolem functions the in-scope universal arity") {
  ClauseSet cs = clausify_text("fof(a,axiom, ![X]: ?[Y]: r(X,Y)).");
  REQUIRE(cs.clauses.size() == 1);
  CHECK(print_clause(cs, cs.clauses[0]) == "cnf(a_1, axiom, r(X0,skolem1(X0))).");
  CHECK(symbol_named(cs, "skolem1").arity == 1);

  // Alternating prefixes and polarity flips.
  ClauseSet deep = clausify_text("fof(a,axiom, ![X]: ?[Y]: ![Z]: ?[W]: r(X,Y,Z,W)).");
  CHECK(symbol_named(deep, "skolem1").arity == 1);
  CHECK(symbol_named(deep, "skolem2").arity == 2);

  ClauseSet neg = clausify_text("fof(a,axiom, ~(?[X]: ![Y]: p(X,Y))).");
  CHECK(symbol_named(neg, "skolem1").arity == 1);

  ClauseSet ante = clausify_text("fof(a,axiom, (![X]: p(X)) => q).");
  CHECK(symbol_named(ante, "skolem1").arity == 0);
}

TEST_CASE("clausify names wide disjuncts above the threshold") {
  ClausifyConfig config;
  config.naming_threshold = 2;
  ClauseSet cs = clausify_text("fof(f,axiom, (a & b) | (c & d)).", config);
  REQUIRE(cs.clauses.size() == 5);
  CHECK(print_clause(cs, cs.clauses[0]) == "cnf(f_1, axiom, def1 | def2).");
  CHECK(print_clause(cs, cs.clauses[1]) == "cnf(f_2, axiom, ~def1 | a).");
  CHECK(print_clause(cs, cs.clauses[2]) == "cnf(f_3, axiom, ~def1 | b).");
  CHECK(print_clause(cs, cs.clauses[3]) == "cnf(f_4, axiom, ~def2 | c).");
  CHECK(print_clause(cs, cs.clauses[4]) == "cnf(f_5, axiom, ~def2 | d).");
  CHECK(symbol_named(cs, "def1").origin == SymbolOrigin::definition);

  // Equisatisfiable under the truth-table oracle, both directions.
  ClauseSet fcs;
  auto fs = parse_fof("fof(f,axiom, (a & b) | (c & d)).", fcs);
  CHECK(propsat::formulas_satisfiable(fcs, fs) == propsat::clauses_satisfiable(cs));

  // Default threshold 4 keeps the naive 4-clause expansion.
  ClauseSet naive = clausify_text("fof(f,axiom, (a & b) | (c & d)).");
  CHECK(naive.clauses.size() == 4);
  CHECK(!naive.symbols.find("def1").has_value());
}

TEST_CASE("clausify negates conjectures before clausifying") {
  ClauseSet cs = clausify_text("fof(g,conjecture, ?[X]: p(X)).");
  REQUIRE(cs.clauses.size() == 1);
  CHECK(cs.clauses[0].clause_type == "negated_conjecture");
  CHECK(print_clause(cs, cs.clauses[0]) == "cnf(g_1, negated_conjecture, ~p(X0)).");
  CHECK(!cs.symbols.find("skolem1").has_value());
}

TEST_CASE("clausify names definitional predicates over free variables") {
  ClausifyConfig config;
  config.naming_threshold = 2;
  ClauseSet cs = clausify_text(
      "fof(f,axiom, ![X]: ![Y]: ((p(X) & q(Y)) | (r(X) & r(Y)))).", config);
  const Symbol& def1 = symbol_named(cs, "def1");
  CHECK(def1.kind == SymbolKind::predicate);
  CHECK(def1.arity == 2);
  CHECK(symbol_named(cs, "def2").arity == 2);
  REQUIRE(cs.clauses.size() == 5);
  CHECK(print_clause(cs, cs.clauses[0]) == "cnf(f_1, axiom, def1(X0,X1) | def2(X0,X1)).");
  CHECK(print_clause(cs, cs.clauses[1]) == "cnf(f_2, axiom, ~def1(X0,X1) | p(X0)).");
}

TEST_CASE("clausified clauses have pairwise disjoint variables") {
  ClauseSet cs = clausify_text("fof(f,axiom, ![X]: (p(X) & q(X) & r(X))).");
  REQUIRE(cs.clauses.size() == 3);
  auto v1 = clause_vars(cs, cs.clauses[0]);
  auto v2 = clause_vars(cs, cs.clauses[1]);
  auto v3 = clause_vars(cs, cs.clauses[2]);
  for (int32_t v : v1) CHECK(!v2.count(v));
  for (int32_t v : v2) CHECK(!v3.count(v));
  CHECK(cs.scope == VariableScope::per_clause);
}

TEST_CASE("clausification is equisatisfiable on random propositional formulas") {
  Rng rng(20260825);
  int done = 0;
  for (int i = 0; i < 300; ++i) {
    std::string body = propsat::random_prop_formula(rng, 4);
    std::string text = "fof(f,axiom, " + body + ").";
    ClauseSet fcs;
    auto fs = parse_fof(text, fcs);
    ClauseSet ccs = clausify_text(text);
    bool sat_formula = propsat::formulas_satisfiable(fcs, fs);
    bool sat_clauses = propsat::clauses_satisfiable(ccs);
    CHECK(sat_formula == sat_clauses);
    ++done;
  }
  CHECK(done == 300);
}

TEST_CASE("interned terms are identical iff their printed forms are equal") {
  ClauseSet cs;
  SymbolId f = cs.symbols.intern("f", 2, SymbolKind::function);
  SymbolId g = cs.symbols.intern("g", 1, SymbolKind::function);
  SymbolId c0 = cs.symbols.intern("c0", 0, SymbolKind::function);
  SymbolId c1 = cs.symbols.intern("c1", 0, SymbolKind::function);
  Rng rng(7);
  std::vector<TermId> terms;
  auto gen = [&](auto&& self, int depth) -> TermId {
    int pick = depth == 0 ? static_cast<int>(rng.below(3)) : static_cast<int>(rng.below(5));
    switch (pick) {
      case 0:
        return cs.arena.variable(static_cast<int32_t>(rng.below(3)));
      case 1:
        return cs.arena.app(c0, {});
      case 2:
        return cs.arena.app(c1, {});
      case 3:
        return cs.arena.app(g, {self(self, depth - 1)});
      default:
        return cs.arena.app(f, {self(self, depth - 1), self(self, depth - 1)});
    }
  };
  for (int i = 0; i < 80; ++i) terms.push_back(gen(gen, 3));
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      bool same_id = terms[i] == terms[j];
      bool same_print = print_term_raw(cs, terms[i]) == print_term_raw(cs, terms[j]);
      CHECK(same_id == same_print);
    }
}

TEST_CASE("printed clause sets reparse to the same printed form") {
  const char* inputs[] = {
      "cnf(c1,axiom, p(X) | ~q(f(X))). cnf(c2,axiom, r(a, b)).",
      "cnf(c1,axiom, f(X) = X | a != b).",
      "cnf(c1,negated_conjecture, ~p(g(Y), Y)).",
  };
  for (const char* input : inputs) {
    ClauseSet cs = parse_cnf(input);
    std::string printed = print_clause_set(cs);
    ClauseSet again = parse_cnf(printed);
    CHECK(print_clause_set(again) == printed);
  }

  ClauseSet cs = clausify_text(
      "fof(a,axiom, ![X]: ?[Y]: r(X,Y)). fof(b,conjecture, ?[Z]: r(Z,Z)).");
  std::string printed = print_clause_set(cs);
  ClauseSet again = parse_cnf(printed);
  CHECK(print_clause_set(again) == printed);
}

TEST_CASE("symbol_statistics counts occurrences in traversal order") {
  ClauseSet cs = parse_cnf("cnf(c1,axiom, p(c)). cnf(c2,axiom, p(d)).");
  auto table = symbol_statistics(cs);
  REQUIRE(table.size() == 3);
  CHECK(table[0].name == "p");
  CHECK(table[0].count == 2);
  CHECK(table[0].fraction == doctest::Approx(0.5));
  CHECK(table[1].name == "c");
  CHECK(table[1].count == 1);
  CHECK(table[2].name == "d");
  CHECK(table[2].count == 1);
}

TEST_CASE("symbol_statistics on an empty clause set is empty") {
  ClauseSet cs;
  CHECK(symbol_statistics(cs).empty());
}

TEST_CASE("symbol_statistics collapses generated symbols into class labels") {
  ClausifyConfig config;
  config.naming_threshold = 2;
  ClauseSet cs = clausify_text(
      "fof(f,axiom, ((a & b) | (c & d)) ). fof(g,axiom, ?[X]: ?[Y]: r(X,Y)).", config);
  auto table = symbol_statistics(cs, true);
  long skolem = 0, def = 0;
  for (const auto& row : table) {
    if (row.name == "skolem") skolem = row.count;
    if (row.name == "def") def = row.count;
    CHECK(row.name.find("skolem1") == std::string::npos);
    CHECK(row.name.find("def1") == std::string::npos);
  }
  CHECK(skolem == 2);
  CHECK(def == 6);
}
