// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/fol/clausify.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace invnet::fol {

namespace {

// Negation normal form with quantifiers still in place. After skolemize()
// only lit / conj / disj nodes remain and all variables are implicitly
// universal.
struct Nnf {
  enum class Kind : uint8_t { lit, conj, disj, forall, exists };
  Kind kind;
  bool negative = false;
  TermId atom = -1;
  int32_t var = -1;
  std::unique_ptr<Nnf> a, b;
};

std::unique_ptr<Nnf> make_lit(TermId atom, bool negative) {
  auto n = std::make_unique<Nnf>();
  n->kind = Nnf::Kind::lit;
  n->atom = atom;
  n->negative = negative;
  return n;
}

std::unique_ptr<Nnf> make_bin(Nnf::Kind k, std::unique_ptr<Nnf> a, std::unique_ptr<Nnf> b) {
  auto n = std::make_unique<Nnf>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

std::unique_ptr<Nnf> make_quant(Nnf::Kind k, int32_t var, std::unique_ptr<Nnf> body) {
  auto n = std::make_unique<Nnf>();
  n->kind = k;
  n->var = var;
  n->a = std::move(body);
  return n;
}

std::unique_ptr<Nnf> to_nnf(const Formula& f, bool negated) {
  using FK = Formula::Kind;
  using NK = Nnf::Kind;
  switch (f.kind) {
    case FK::atom:
      return make_lit(f.atom, negated);
    case FK::negation:
      return to_nnf(*f.left, !negated);
    case FK::conjunction:
      return make_bin(negated ? NK::disj : NK::conj, to_nnf(*f.left, negated),
                      to_nnf(*f.right, negated));
    case FK::disjunction:
      return make_bin(negated ? NK::conj : NK::disj, to_nnf(*f.left, negated),
                      to_nnf(*f.right, negated));
    case FK::implication:
      return make_bin(negated ? NK::conj : NK::disj, to_nnf(*f.left, !negated),
                      to_nnf(*f.right, negated));
    case FK::equivalence:
      if (negated)  // (A | B) & (~A | ~B)
        return make_bin(NK::conj,
                        make_bin(NK::disj, to_nnf(*f.left, false), to_nnf(*f.right, false)),
                        make_bin(NK::disj, to_nnf(*f.left, true), to_nnf(*f.right, true)));
      // (~A | B) & (~B | A)
      return make_bin(NK::conj,
                      make_bin(NK::disj, to_nnf(*f.left, true), to_nnf(*f.right, false)),
                      make_bin(NK::disj, to_nnf(*f.right, true), to_nnf(*f.left, false)));
    case FK::forall:
      return make_quant(negated ? NK::exists : NK::forall, f.var, to_nnf(*f.left, negated));
    case FK::exists:
      return make_quant(negated ? NK::forall : NK::exists, f.var, to_nnf(*f.left, negated));
  }
  throw Error("unreachable formula kind");
}

TermId substitute(ClauseSet& cs, TermId t, const std::map<int32_t, TermId>& sub,
                  std::map<TermId, TermId>& memo) {
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  const TermNode& n = cs.arena.node(t);
  TermId result;
  if (n.is_variable()) {
    auto s = sub.find(n.var_id);
    result = s == sub.end() ? t : s->second;
  } else {
    std::vector<TermId> args;
    args.reserve(static_cast<size_t>(n.arity()));
    bool changed = false;
    for (TermId a : cs.arena.args(t)) {
      TermId a2 = substitute(cs, a, sub, memo);
      changed |= a2 != a;
      args.push_back(a2);
    }
    result = changed ? cs.arena.app(n.symbol, args) : t;
  }
  memo.emplace(t, result);
  return result;
}

class Clausifier {
 public:
  Clausifier(ClauseSet& cs, const ClausifyConfig& config) : cs_(cs), config_(config) {}

  // Skolemizes in place: existential variables become applications of fresh
  // skolem functions of the universals in scope at the introduction point.
  void skolemize(Nnf& n, std::vector<int32_t>& universals, std::map<int32_t, TermId>& sub) {
    switch (n.kind) {
      case Nnf::Kind::lit: {
        std::map<TermId, TermId> memo;
        n.atom = substitute(cs_, n.atom, sub, memo);
        return;
      }
      case Nnf::Kind::conj:
      case Nnf::Kind::disj:
        skolemize(*n.a, universals, sub);
        skolemize(*n.b, universals, sub);
        return;
      case Nnf::Kind::forall: {
        universals.push_back(n.var);
        skolemize(*n.a, universals, sub);
        universals.pop_back();
        // Drop the quantifier node; the body replaces it.
        auto body = std::move(n.a);
        n = std::move(*body);
        return;
      }
      case Nnf::Kind::exists: {
        std::string name = cs_.symbols.fresh_name("skolem", skolem_counter_);
        SymbolId sk = cs_.symbols.intern(name, static_cast<int>(universals.size()),
                                         SymbolKind::function, SymbolOrigin::skolem);
        std::vector<TermId> args;
        args.reserve(universals.size());
        for (int32_t u : universals) args.push_back(cs_.arena.variable(u));
        sub[n.var] = cs_.arena.app(sk, args);
        skolemize(*n.a, universals, sub);
        sub.erase(n.var);
        auto body = std::move(n.a);
        n = std::move(*body);
        return;
      }
    }
  }

  // Number of clauses a naive distributive expansion would produce
  // (saturating; only compared against the naming threshold).
  static long count_naive(const Nnf& n) {
    constexpr long kCap = 1L << 30;
    switch (n.kind) {
      case Nnf::Kind::lit:
        return 1;
      case Nnf::Kind::conj:
        return std::min(kCap, count_naive(*n.a) + count_naive(*n.b));
      case Nnf::Kind::disj: {
        long a = count_naive(*n.a), b = count_naive(*n.b);
        return a > kCap / std::max(1L, b) ? kCap : a * b;
      }
      default:
        throw Error("quantifier survived skolemization");
    }
  }

  using LiteralList = std::vector<Literal>;

  // Clause lists for a quantifier-free NNF node. Main clauses conjunctively
  // cover the node itself; definitional side clauses are appended to side_.
  std::vector<LiteralList> to_clauses(const Nnf& n) {
    if (n.kind == Nnf::Kind::conj) {
      std::vector<LiteralList> out = to_clauses(*n.a);
      std::vector<LiteralList> rhs = to_clauses(*n.b);
      out.insert(out.end(), std::make_move_iterator(rhs.begin()),
                 std::make_move_iterator(rhs.end()));
      return out;
    }
    return expand_disjunction(n);
  }

  std::vector<LiteralList> expand_disjunction(const Nnf& n) {
    if (count_naive(n) <= std::max(1, config_.naming_threshold)) return naive_cnf(n);

    std::vector<const Nnf*> disjuncts;
    flatten_disjuncts(n, disjuncts);
    LiteralList main_clause;
    for (const Nnf* d : disjuncts) {
      if (d->kind == Nnf::Kind::lit) {
        main_clause.push_back(Literal{d->negative ? Polarity::negative : Polarity::positive,
                                      d->atom});
        continue;
      }
      // Name the non-literal disjunct with a fresh predicate over its free
      // variables; def(vars) => disjunct is enough at positive polarity.
      std::vector<int32_t> fv;
      collect_free_vars(*d, fv);
      std::string name = cs_.symbols.fresh_name("def", def_counter_);
      SymbolId def = cs_.symbols.intern(name, static_cast<int>(fv.size()),
                                        SymbolKind::predicate, SymbolOrigin::definition);
      std::vector<TermId> args;
      for (int32_t v : fv) args.push_back(cs_.arena.variable(v));
      TermId def_atom = cs_.arena.app(def, args);
      main_clause.push_back(Literal{Polarity::positive, def_atom});
      for (LiteralList& c : to_clauses(*d)) {
        LiteralList guarded;
        guarded.push_back(Literal{Polarity::negative, def_atom});
        guarded.insert(guarded.end(), c.begin(), c.end());
        side_.push_back(std::move(guarded));
      }
    }
    return {std::move(main_clause)};
  }

  std::vector<LiteralList> naive_cnf(const Nnf& n) {
    switch (n.kind) {
      case Nnf::Kind::lit:
        return {{Literal{n.negative ? Polarity::negative : Polarity::positive, n.atom}}};
      case Nnf::Kind::conj: {
        auto out = naive_cnf(*n.a);
        auto rhs = naive_cnf(*n.b);
        out.insert(out.end(), std::make_move_iterator(rhs.begin()),
                   std::make_move_iterator(rhs.end()));
        return out;
      }
      case Nnf::Kind::disj: {
        auto lhs = naive_cnf(*n.a);
        auto rhs = naive_cnf(*n.b);
        std::vector<LiteralList> out;
        out.reserve(lhs.size() * rhs.size());
        for (const LiteralList& l : lhs)
          for (const LiteralList& r : rhs) {
            LiteralList c = l;
            c.insert(c.end(), r.begin(), r.end());
            out.push_back(std::move(c));
          }
        return out;
      }
      default:
        throw Error("quantifier survived skolemization");
    }
  }

  static void flatten_disjuncts(const Nnf& n, std::vector<const Nnf*>& out) {
    if (n.kind == Nnf::Kind::disj) {
      flatten_disjuncts(*n.a, out);
      flatten_disjuncts(*n.b, out);
    } else {
      out.push_back(&n);
    }
  }

  void collect_free_vars(const Nnf& n, std::vector<int32_t>& out) const {
    if (n.kind == Nnf::Kind::lit) {
      collect_term_vars(n.atom, out);
    } else {
      collect_free_vars(*n.a, out);
      collect_free_vars(*n.b, out);
    }
  }

  void collect_term_vars(TermId t, std::vector<int32_t>& out) const {
    const TermNode& node = cs_.arena.node(t);
    if (node.is_variable()) {
      if (std::find(out.begin(), out.end(), node.var_id) == out.end())
        out.push_back(node.var_id);
      return;
    }
    for (TermId a : cs_.arena.args(t)) collect_term_vars(a, out);
  }

  std::vector<LiteralList> take_sides() { return std::move(side_); }

 private:
  ClauseSet& cs_;
  const ClausifyConfig& config_;
  std::vector<LiteralList> side_;
  int skolem_counter_ = 0;
  int def_counter_ = 0;
};

}  // namespace

ClauseSet clausify(std::vector<NamedFormula> formulas, ClauseSet cs,
                   const ClausifyConfig& config) {
  Clausifier clausifier(cs, config);
  for (NamedFormula& nf : formulas) {
    bool negate = nf.role == "conjecture";
    std::string role = negate ? config.negated_conjecture_role : nf.role;
    auto nnf = to_nnf(*nf.formula, negate);
    std::vector<int32_t> universals;
    std::map<int32_t, TermId> sub;
    clausifier.skolemize(*nnf, universals, sub);
    auto clauses = clausifier.to_clauses(*nnf);
    auto sides = clausifier.take_sides();
    clauses.insert(clauses.end(), std::make_move_iterator(sides.begin()),
                   std::make_move_iterator(sides.end()));
    int index = 0;
    for (auto& literals : clauses) {
      Clause c;
      c.name = nf.name + "_" + std::to_string(++index);
      c.clause_type = role;
      // Variables are renamed apart per clause: each clause is independently
      // universally closed, and per_clause scoping governs node identity.
      std::map<int32_t, TermId> fresh;
      std::map<TermId, TermId> memo;
      for (Literal& lit : literals) {
        std::vector<int32_t> vars;
        clausifier.collect_term_vars(lit.atom, vars);
        for (int32_t v : vars)
          if (!fresh.count(v)) fresh[v] = cs.arena.variable(cs.arena.fresh_var());
        lit.atom = substitute(cs, lit.atom, fresh, memo);
      }
      c.literals = std::move(literals);
      cs.clauses.push_back(std::move(c));
    }
  }
  cs.scope = VariableScope::per_clause;
  return cs;
}

ClauseSet clausify_text(std::string_view fof_text, const ClausifyConfig& config) {
  ClauseSet cs;
  auto formulas = parse_fof(fof_text, cs);
  return clausify(std::move(formulas), std::move(cs), config);
}

}  // namespace invnet::fol
