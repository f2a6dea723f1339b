// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/fol/parser.hpp"

#include <cctype>
#include <map>
#include <utility>

namespace invnet::fol {

std::unique_ptr<Formula> Formula::make_atom(TermId t) {
  auto f = std::make_unique<Formula>();
  f->kind = Kind::atom;
  f->atom = t;
  return f;
}

std::unique_ptr<Formula> Formula::unary(Kind k, std::unique_ptr<Formula> x) {
  auto f = std::make_unique<Formula>();
  f->kind = k;
  f->left = std::move(x);
  return f;
}

std::unique_ptr<Formula> Formula::binary(Kind k, std::unique_ptr<Formula> l,
                                         std::unique_ptr<Formula> r) {
  auto f = std::make_unique<Formula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

std::unique_ptr<Formula> Formula::quant(Kind k, int32_t var, std::string name,
                                        std::unique_ptr<Formula> body) {
  auto f = std::make_unique<Formula>();
  f->kind = k;
  f->var = var;
  f->var_name = std::move(name);
  f->left = std::move(body);
  return f;
}

std::unique_ptr<Formula> Formula::clone() const {
  auto f = std::make_unique<Formula>();
  f->kind = kind;
  f->atom = atom;
  f->var = var;
  f->var_name = var_name;
  if (left) f->left = left->clone();
  if (right) f->right = right->clone();
  return f;
}

namespace {

enum class Tok : uint8_t {
  lower_word,   // lowercase identifier or quoted atom
  upper_word,   // variable
  integer,
  lparen, rparen, lbracket, rbracket,
  comma, dot, colon,
  pipe, ampersand, tilde,
  eq, neq, implies, iff,
  bang, question,
  end
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::end, "", line, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '$'))
        advance();
      std::string word(text_.substr(start, pos_ - start));
      bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
      return {upper ? Tok::upper_word : Tok::lower_word, std::move(word), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      return {Tok::integer, std::string(text_.substr(start, pos_ - start)), line, col};
    }
    if (c == '\'') {  // quoted lower word, common in TPTP names
      advance();
      size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '\'') advance();
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", line, col);
      std::string word(text_.substr(start, pos_ - start));
      advance();
      return {Tok::lower_word, std::move(word), line, col};
    }
    advance();
    switch (c) {
      case '(': return {Tok::lparen, "(", line, col};
      case ')': return {Tok::rparen, ")", line, col};
      case '[': return {Tok::lbracket, "[", line, col};
      case ']': return {Tok::rbracket, "]", line, col};
      case ',': return {Tok::comma, ",", line, col};
      case '.': return {Tok::dot, ".", line, col};
      case ':': return {Tok::colon, ":", line, col};
      case '|': return {Tok::pipe, "|", line, col};
      case '&': return {Tok::ampersand, "&", line, col};
      case '~': return {Tok::tilde, "~", line, col};
      case '?': return {Tok::question, "?", line, col};
      case '=':
        if (peek() == '>') {
          advance();
          return {Tok::implies, "=>", line, col};
        }
        return {Tok::eq, "=", line, col};
      case '!':
        if (peek() == '=') {
          advance();
          return {Tok::neq, "!=", line, col};
        }
        return {Tok::bang, "!", line, col};
      case '<':
        if (peek() == '=' && peek(1) == '>') {
          advance();
          advance();
          return {Tok::iff, "<=>", line, col};
        }
        throw ParseError("unexpected character '<'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  char peek(size_t off = 0) const {
    return pos_ + off + 1 <= text_.size() && pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, ClauseSet& cs) : lex_(text), cs_(cs) { bump(); }

  // --- cnf units -------------------------------------------------------

  void parse_cnf_units() {
    while (cur_.kind != Tok::end) {
      expect_word("cnf");
      expect(Tok::lparen);
      std::string name = expect_name();
      expect(Tok::comma);
      std::string role = expect_name();
      expect(Tok::comma);
      Clause clause;
      clause.name = std::move(name);
      clause.clause_type = std::move(role);
      parse_disjunction_into(clause);
      expect(Tok::rparen);
      expect(Tok::dot);
      cs_.clauses.push_back(std::move(clause));
      if (cs_.scope == VariableScope::per_clause) per_clause_names_.clear();
    }
  }

  // --- fof units -------------------------------------------------------

  std::vector<NamedFormula> parse_fof_units() {
    std::vector<NamedFormula> out;
    while (cur_.kind != Tok::end) {
      expect_word("fof");
      expect(Tok::lparen);
      NamedFormula nf;
      nf.name = expect_name();
      expect(Tok::comma);
      nf.role = expect_name();
      expect(Tok::comma);
      bound_.clear();
      nf.formula = parse_formula();
      expect(Tok::rparen);
      expect(Tok::dot);
      out.push_back(std::move(nf));
    }
    return out;
  }

  std::unique_ptr<Formula> parse_single_formula() {
    bound_.clear();
    auto f = parse_formula();
    if (cur_.kind != Tok::end) throw ParseError("trailing input after formula", cur_.line, cur_.col);
    return f;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  void expect(Tok k) {
    if (cur_.kind != k)
      throw ParseError("unexpected token '" + cur_.text + "'", cur_.line, cur_.col);
    bump();
  }

  void expect_word(const char* w) {
    if (cur_.kind != Tok::lower_word || cur_.text != w)
      throw ParseError(std::string("expected '") + w + "', got '" + cur_.text + "'", cur_.line,
                       cur_.col);
    bump();
  }

  std::string expect_name() {
    if (cur_.kind != Tok::lower_word && cur_.kind != Tok::upper_word && cur_.kind != Tok::integer)
      throw ParseError("expected a name, got '" + cur_.text + "'", cur_.line, cur_.col);
    std::string s = cur_.text;
    bump();
    return s;
  }

  // --- cnf grammar -----------------------------------------------------

  void parse_disjunction_into(Clause& clause) {
    // Optional outer parentheses around the disjunction.
    if (cur_.kind == Tok::lparen) {
      Token save = cur_;
      bump();
      parse_literals_into(clause);
      if (cur_.kind == Tok::rparen) {
        bump();
        return;
      }
      throw ParseError("expected ')' closing disjunction started", save.line, save.col);
    }
    parse_literals_into(clause);
  }

  void parse_literals_into(Clause& clause) {
    clause.literals.push_back(parse_literal());
    while (cur_.kind == Tok::pipe) {
      bump();
      clause.literals.push_back(parse_literal());
    }
  }

  Literal parse_literal() {
    bool neg = false;
    while (cur_.kind == Tok::tilde) {
      neg = !neg;
      bump();
    }
    auto [atom, eq_negated] = parse_atom();
    if (eq_negated) neg = !neg;
    return Literal{neg ? Polarity::negative : Polarity::positive, atom};
  }

  // Unresolved term tree; symbol kinds are only known once we have seen
  // whether an infix (in)equality follows, so interning is deferred.
  struct PreTerm {
    bool is_var = false;
    std::string name;
    std::vector<PreTerm> args;
    int line = 0;
    int col = 0;
  };

  // Returns (atom term, negated-by-infix-!=). The atom head is a predicate.
  std::pair<TermId, bool> parse_atom() {
    PreTerm first = parse_preterm();
    if (cur_.kind == Tok::eq || cur_.kind == Tok::neq) {
      bool neq = cur_.kind == Tok::neq;
      bump();
      PreTerm rhs = parse_preterm();
      TermId lhs_t = intern_preterm(first, SymbolKind::function);
      TermId rhs_t = intern_preterm(rhs, SymbolKind::function);
      SymbolId eq = cs_.symbols.intern("=", 2, SymbolKind::predicate);
      return {cs_.arena.app(eq, {lhs_t, rhs_t}), neq};
    }
    if (first.is_var)
      throw ParseError("a literal cannot be a bare variable", first.line, first.col);
    return {intern_preterm(first, SymbolKind::predicate), false};
  }

  PreTerm parse_preterm() {
    PreTerm t;
    t.line = cur_.line;
    t.col = cur_.col;
    if (cur_.kind == Tok::upper_word) {
      t.is_var = true;
      t.name = cur_.text;
      bump();
      return t;
    }
    if (cur_.kind != Tok::lower_word && cur_.kind != Tok::integer)
      throw ParseError("expected a term, got '" + cur_.text + "'", cur_.line, cur_.col);
    t.name = cur_.text;
    bump();
    if (cur_.kind == Tok::lparen) {
      bump();
      t.args.push_back(parse_preterm());
      while (cur_.kind == Tok::comma) {
        bump();
        t.args.push_back(parse_preterm());
      }
      expect(Tok::rparen);
    }
    return t;
  }

  TermId intern_preterm(const PreTerm& t, SymbolKind kind) {
    if (t.is_var) return variable_ref(t.name, t.line, t.col);
    std::vector<TermId> args;
    args.reserve(t.args.size());
    for (const PreTerm& a : t.args) args.push_back(intern_preterm(a, SymbolKind::function));
    SymbolId sym;
    try {
      sym = cs_.symbols.intern(t.name, static_cast<int>(t.args.size()), kind);
    } catch (const Error& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
    return cs_.arena.app(sym, args);
  }

  TermId variable_ref(const std::string& name, int line, int col) {
    if (in_fof_) {
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
        if (it->first == name) return cs_.arena.variable(it->second);
      throw ParseError("unbound variable '" + name + "'", line, col);
    }
    auto& names =
        cs_.scope == VariableScope::per_clause ? per_clause_names_ : shared_names_;
    auto it = names.find(name);
    if (it != names.end()) return cs_.arena.variable(it->second);
    int32_t id = cs_.arena.fresh_var();
    names.emplace(name, id);
    return cs_.arena.variable(id);
  }

  // --- fof grammar -----------------------------------------------------
  // Precedence (loosest to tightest): <=>, =>, |, &, unary.
  // => is right-associative; <=> associates left.

  std::unique_ptr<Formula> parse_formula() {
    in_fof_ = true;
    auto f = parse_iff();
    return f;
  }

  std::unique_ptr<Formula> parse_iff() {
    auto lhs = parse_implies();
    while (cur_.kind == Tok::iff) {
      bump();
      lhs = Formula::binary(Formula::Kind::equivalence, std::move(lhs), parse_implies());
    }
    return lhs;
  }

  std::unique_ptr<Formula> parse_implies() {
    auto lhs = parse_or();
    if (cur_.kind == Tok::implies) {
      bump();
      return Formula::binary(Formula::Kind::implication, std::move(lhs), parse_implies());
    }
    return lhs;
  }

  std::unique_ptr<Formula> parse_or() {
    auto lhs = parse_and();
    while (cur_.kind == Tok::pipe) {
      bump();
      lhs = Formula::binary(Formula::Kind::disjunction, std::move(lhs), parse_and());
    }
    return lhs;
  }

  std::unique_ptr<Formula> parse_and() {
    auto lhs = parse_unary();
    while (cur_.kind == Tok::ampersand) {
      bump();
      lhs = Formula::binary(Formula::Kind::conjunction, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  std::unique_ptr<Formula> parse_unary() {
    if (cur_.kind == Tok::tilde) {
      bump();
      return Formula::unary(Formula::Kind::negation, parse_unary());
    }
    if (cur_.kind == Tok::bang || cur_.kind == Tok::question) {
      bool universal = cur_.kind == Tok::bang;
      bump();
      expect(Tok::lbracket);
      std::vector<std::pair<std::string, int32_t>> vars;
      while (true) {
        if (cur_.kind != Tok::upper_word)
          throw ParseError("expected a variable, got '" + cur_.text + "'", cur_.line, cur_.col);
        vars.emplace_back(cur_.text, cs_.arena.fresh_var());
        bump();
        if (cur_.kind != Tok::comma) break;
        bump();
      }
      expect(Tok::rbracket);
      expect(Tok::colon);
      for (auto& v : vars) bound_.push_back(v);
      auto body = parse_unary();
      for (size_t i = 0; i < vars.size(); ++i) bound_.pop_back();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = Formula::quant(universal ? Formula::Kind::forall : Formula::Kind::exists,
                              it->second, it->first, std::move(body));
      return body;
    }
    if (cur_.kind == Tok::lparen) {
      bump();
      auto f = parse_iff();
      expect(Tok::rparen);
      return f;
    }
    auto [atom, eq_negated] = parse_atom();
    auto f = Formula::make_atom(atom);
    if (eq_negated) f = Formula::unary(Formula::Kind::negation, std::move(f));
    return f;
  }

  Lexer lex_;
  ClauseSet& cs_;
  Token cur_;
  bool in_fof_ = false;
  std::vector<std::pair<std::string, int32_t>> bound_;  // fof binder stack
  std::map<std::string, int32_t> per_clause_names_;
  std::map<std::string, int32_t> shared_names_;
};

}  // namespace

ClauseSet parse_cnf(std::string_view text, VariableScope scope) {
  ClauseSet cs;
  cs.scope = scope;
  Parser p(text, cs);
  p.parse_cnf_units();
  return cs;
}

std::vector<NamedFormula> parse_fof(std::string_view text, ClauseSet& cs) {
  Parser p(text, cs);
  return p.parse_fof_units();
}

std::unique_ptr<Formula> parse_fof_formula(std::string_view text, ClauseSet& cs) {
  Parser p(text, cs);
  return p.parse_single_formula();
}

}  // namespace invnet::fol
