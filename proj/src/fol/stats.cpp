// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/fol/stats.hpp"

#include <algorithm>
#include <map>

namespace invnet::fol {

namespace {

void count_term(const ClauseSet& cs, TermId t, std::map<std::string, long>& counts,
                bool collapse) {
  const TermNode& n = cs.arena.node(t);
  if (n.is_variable()) return;
  const Symbol& sym = cs.symbols[n.symbol];
  if (collapse && sym.origin == SymbolOrigin::skolem)
    ++counts["skolem"];
  else if (collapse && sym.origin == SymbolOrigin::definition)
    ++counts["def"];
  else
    ++counts[sym.name];
  for (TermId a : cs.arena.args(t)) count_term(cs, a, counts, collapse);
}

}  // namespace

std::vector<SymbolCount> symbol_statistics(const ClauseSet& cs, bool collapse_generated) {
  std::map<std::string, long> counts;
  for (const Clause& c : cs.clauses)
    for (const Literal& lit : c.literals) count_term(cs, lit.atom, counts, collapse_generated);
  long total = 0;
  for (const auto& [name, count] : counts) total += count;
  std::vector<SymbolCount> out;
  out.reserve(counts.size());
  for (const auto& [name, count] : counts)
    out.push_back({name, count, total ? static_cast<double>(count) / total : 0.0});
  std::sort(out.begin(), out.end(), [](const SymbolCount& a, const SymbolCount& b) {
    return a.count != b.count ? a.count > b.count : a.name < b.name;
  });
  return out;
}

}  // namespace invnet::fol
