// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "invnet/fol/parser.hpp"

namespace invnet::fol {

struct ClausifyConfig {
  /// A disjunction whose naive CNF expansion would exceed this many clauses
  /// gets its non-literal disjuncts replaced by fresh definitional predicates.
  int naming_threshold = 4;
  /// Formulas with role "conjecture" are negated before clausification and
  /// re-tagged with this role.
  std::string negated_conjecture_role = "negated_conjecture";
};

/// Transforms formulas to an equisatisfiable clause set. Conjectures are
/// negated first. Fresh symbols are named skolemN / defN with a counter shared
/// across the whole input, and carry SymbolOrigin::skolem / ::definition.
/// Consumes the formulas (they are rewritten in place during the transform).
ClauseSet clausify(std::vector<NamedFormula> formulas, ClauseSet cs,
                   const ClausifyConfig& config = {});

/// Convenience: parse fof text and clausify it.
ClauseSet clausify_text(std::string_view fof_text, const ClausifyConfig& config = {});

}  // namespace invnet::fol
