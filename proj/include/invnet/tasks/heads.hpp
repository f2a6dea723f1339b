// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "invnet/gnn/model.hpp"

namespace invnet::tasks {

using gnn::ParamKind;
using gnn::ParamSpec;

/// Premise selection: pooled conjecture rows and pooled candidate rows feed
/// one 128-wide ReLU layer and a sigmoid output.
std::vector<ParamSpec> describe_premise_head(int d_c, int hidden = 128);
/// Symbol naming: one affine map from a symbol row to vocabulary logits.
std::vector<ParamSpec> describe_symbol_head(int d_s, int vocab);
/// Clause-set value: 64-wide ReLU per clause, pooled, 64-wide ReLU, sigmoid.
std::vector<ParamSpec> describe_value_head(int d_c, int hidden = 64);
/// Action preference for an (axiom clause, literal, goal clause) triple:
/// concatenated rows through one 64-wide ReLU layer to a raw logit.
std::vector<ParamSpec> describe_policy_head(int d_c, int d_t, int hidden = 64);

template <typename Real>
void register_heads(tensor::ParamStore<Real>& store, const std::vector<ParamSpec>& specs,
                    Rng& rng, const gnn::InitScheme& scheme = {}) {
  gnn::register_param_specs(store, specs, rng, scheme);
}

/// Probability that each candidate premise is useful for its conjecture.
/// Segment k of `conj` / `prem` lists the clause-node rows of candidate k's
/// conjecture and premise sets; returns a column of probabilities.
template <typename Real>
int32_t premise_head(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& p, int32_t c_rows,
                     const tensor::Segments& conj, const tensor::Segments& prem) {
  if (conj.count() != prem.count())
    throw ShapeError("premise_head: candidate counts disagree");
  for (int k = 0; k < conj.count(); ++k)
    if (conj.begin(k) == conj.end(k) || prem.begin(k) == prem.end(k))
      throw ShapeError("premise_head: empty clause-node set");
  auto x = tape.concat_cols(tape.red(c_rows, conj), tape.red(c_rows, prem));
  auto h = tape.relu(tape.add_row_bias(tape.linear(tape.param(p, "head.premise.W1"), x),
                                       tape.param(p, "head.premise.b1")));
  return tape.sigmoid(tape.add_row_bias(tape.linear(tape.param(p, "head.premise.W2"), h),
                                        tape.param(p, "head.premise.b2")));
}

/// Vocabulary logits for every row of `s_rows`.
template <typename Real>
int32_t symbol_head(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& p, int32_t s_rows) {
  return tape.add_row_bias(tape.linear(tape.param(p, "head.symbol.W"), s_rows),
                           tape.param(p, "head.symbol.b"));
}

/// One value in (0,1) per clause group.
template <typename Real>
int32_t value_head(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& p, int32_t c_rows,
                   const tensor::Segments& groups) {
  for (int k = 0; k < groups.count(); ++k)
    if (groups.begin(k) == groups.end(k)) throw ShapeError("value_head: empty clause group");
  auto per_clause =
      tape.relu(tape.add_row_bias(tape.linear(tape.param(p, "head.value.W1"), c_rows),
                                  tape.param(p, "head.value.b1")));
  auto pooled = tape.red(per_clause, groups);
  auto h = tape.relu(tape.add_row_bias(tape.linear(tape.param(p, "head.value.W2"), pooled),
                                       tape.param(p, "head.value.b2")));
  return tape.sigmoid(tape.add_row_bias(tape.linear(tape.param(p, "head.value.W3"), h),
                                        tape.param(p, "head.value.b3")));
}

/// Raw action logits, one per (axiom, literal, goal) triple.
template <typename Real>
int32_t policy_logits(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& p, int32_t c_rows,
                      int32_t t_rows, const std::vector<int32_t>& axioms,
                      const std::vector<int32_t>& literals, const std::vector<int32_t>& goals) {
  if (axioms.size() != literals.size() || axioms.size() != goals.size())
    throw ShapeError("policy_logits: triple lists disagree");
  auto x = tape.concat_cols(
      tape.gather_rows(c_rows, axioms),
      tape.concat_cols(tape.gather_rows(t_rows, literals), tape.gather_rows(c_rows, goals)));
  auto h = tape.relu(tape.add_row_bias(tape.linear(tape.param(p, "head.policy.W1"), x),
                                       tape.param(p, "head.policy.b1")));
  return tape.add_row_bias(tape.linear(tape.param(p, "head.policy.W2"), h),
                           tape.param(p, "head.policy.b2"));
}

}  // namespace invnet::tasks
