// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "invnet/common.hpp"

namespace invnet::fol {

using SymbolId = int32_t;
using TermId = int32_t;
constexpr SymbolId kNoSymbol = -1;

enum class SymbolKind : uint8_t { predicate, function };

/// Where a symbol came from: parsed input, or freshly introduced while
/// clausifying (Skolem function / definitional predicate).
enum class SymbolOrigin : uint8_t { input, skolem, definition };

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::function;
  SymbolOrigin origin = SymbolOrigin::input;
};

/// Registry of symbols. A name maps to at most one (arity, kind); reusing a
/// name with a different arity or kind is an error surfaced to the caller.
class SymbolTable {
 public:
  SymbolId intern(const std::string& name, int arity, SymbolKind kind,
                  SymbolOrigin origin = SymbolOrigin::input) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      const Symbol& s = symbols_[it->second];
      if (s.arity != arity)
        throw Error("arity conflict for symbol '" + name + "': " + std::to_string(s.arity) +
                    " vs " + std::to_string(arity));
      if (s.kind != kind)
        throw Error("symbol '" + name + "' used as both predicate and function");
      return it->second;
    }
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{name, arity, kind, origin});
    by_name_.emplace(name, id);
    return id;
  }

  std::optional<SymbolId> find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  const Symbol& operator[](SymbolId id) const { return symbols_[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(symbols_.size()); }

  /// Next free index for fresh skolemN / defN names.
  std::string fresh_name(const char* stem, int& counter) const {
    while (true) {
      std::string name = stem + std::to_string(++counter);
      if (!by_name_.count(name)) return name;
    }
  }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
};

/// A term node: either a variable or an application of a function/predicate
/// symbol. Nodes are hash-consed by the owning TermArena, so structurally
/// identical subterms are the same TermId.
struct TermNode {
  SymbolId symbol = kNoSymbol;  // kNoSymbol means variable
  int32_t var_id = -1;
  uint32_t args_begin = 0;
  uint32_t args_end = 0;

  bool is_variable() const { return symbol == kNoSymbol; }
  int arity() const { return static_cast<int>(args_end - args_begin); }
};

class TermArena {
 public:
  TermId variable(int32_t var_id) {
    auto key = std::make_pair(kNoSymbol, std::vector<TermId>{var_id});
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    TermId id = static_cast<TermId>(nodes_.size());
    TermNode n;
    n.var_id = var_id;
    nodes_.push_back(n);
    interned_.emplace(std::move(key), id);
    return id;
  }

  TermId app(SymbolId symbol, std::span<const TermId> args) {
    auto key = std::make_pair(symbol, std::vector<TermId>(args.begin(), args.end()));
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    TermId id = static_cast<TermId>(nodes_.size());
    TermNode n;
    n.symbol = symbol;
    n.args_begin = static_cast<uint32_t>(args_.size());
    args_.insert(args_.end(), args.begin(), args.end());
    n.args_end = static_cast<uint32_t>(args_.size());
    nodes_.push_back(n);
    interned_.emplace(std::move(key), id);
    return id;
  }

  TermId app(SymbolId symbol, std::initializer_list<TermId> args) {
    return app(symbol, std::span<const TermId>(args.begin(), args.size()));
  }

  const TermNode& node(TermId id) const { return nodes_[static_cast<size_t>(id)]; }
  std::span<const TermId> args(TermId id) const {
    const TermNode& n = node(id);
    return {args_.data() + n.args_begin, static_cast<size_t>(n.arity())};
  }
  int size() const { return static_cast<int>(nodes_.size()); }

  int32_t fresh_var() { return next_var_++; }

 private:
  struct KeyHash {
    size_t operator()(const std::pair<SymbolId, std::vector<TermId>>& k) const {
      uint64_t h = hash_mix(0x51ed27f1ULL, static_cast<uint64_t>(k.first) + 0x100);
      for (TermId a : k.second) h = hash_mix(h, static_cast<uint64_t>(a) + 0x9e37);
      return static_cast<size_t>(h);
    }
  };

  std::vector<TermNode> nodes_;
  std::vector<TermId> args_;
  std::unordered_map<std::pair<SymbolId, std::vector<TermId>>, TermId, KeyHash> interned_;
  int32_t next_var_ = 0;
};

enum class Polarity : uint8_t { positive, negative };

struct Literal {
  Polarity polarity = Polarity::positive;
  TermId atom = -1;  // head symbol must be a predicate

  bool negative() const { return polarity == Polarity::negative; }
  bool operator==(const Literal&) const = default;
};

struct Clause {
  std::string name;               // TPTP clause name, kept for printing
  std::string clause_type;        // role-derived tag, consumed by graph typing
  std::vector<Literal> literals;  // multiset; order must never matter downstream
};

enum class VariableScope : uint8_t { per_clause, shared_named };

/// A set of clauses together with the arena and symbol table that own its
/// terms. Immutable once constructed; safe to share for concurrent reads.
struct ClauseSet {
  TermArena arena;
  SymbolTable symbols;
  std::vector<Clause> clauses;
  VariableScope scope = VariableScope::per_clause;
};

// --- printing ---------------------------------------------------------------

/// Canonical form of one term with raw variable ids (used by interning checks;
/// equal strings iff equal TermId within one arena).
std::string print_term_raw(const ClauseSet& cs, TermId t);

/// TPTP-style rendering with per-clause variable names (X0, X1, ... in first
/// occurrence order). Equality is rendered infix.
std::string print_clause(const ClauseSet& cs, const Clause& c);
std::string print_clause_set(const ClauseSet& cs);

}  // namespace invnet::fol
