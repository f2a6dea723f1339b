// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/tasks/train.hpp"

#include <map>

namespace invnet::tasks {

SymbolMetrics symbol_metrics(const std::vector<ScoredSymbol>& scored) {
  SymbolMetrics m;
  std::map<int32_t, bool> problem_perfect;
  for (const ScoredSymbol& s : scored) {
    if (s.ranking.empty()) throw ConfigError("scored symbol without a ranking");
    const bool hit = s.ranking[0] == s.target;
    ++m.total;
    if (hit) ++m.correct;
    if (s.conjecture) {
      auto [it, fresh] = problem_perfect.emplace(s.problem, true);
      if (!hit) it->second = false;
      (void)fresh;
    }
  }
  for (const auto& [problem, perfect] : problem_perfect) {
    (void)problem;
    ++m.conjecture_problems;
    if (perfect) ++m.perfect_problems;
  }
  return m;
}

}  // namespace invnet::tasks
