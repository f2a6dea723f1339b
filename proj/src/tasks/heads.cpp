// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/tasks/heads.hpp"

namespace invnet::tasks {

namespace {

void affine(std::vector<ParamSpec>& specs, const std::string& w, const std::string& b,
            int out, int in) {
  specs.push_back({w, out, in, true, ParamKind::matrix});
  specs.push_back({b, 1, out, true, ParamKind::bias});
}

}  // namespace

std::vector<ParamSpec> describe_premise_head(int d_c, int hidden) {
  std::vector<ParamSpec> specs;
  affine(specs, "head.premise.W1", "head.premise.b1", hidden, 4 * d_c);
  affine(specs, "head.premise.W2", "head.premise.b2", 1, hidden);
  return specs;
}

std::vector<ParamSpec> describe_symbol_head(int d_s, int vocab) {
  std::vector<ParamSpec> specs;
  affine(specs, "head.symbol.W", "head.symbol.b", vocab, d_s);
  return specs;
}

std::vector<ParamSpec> describe_value_head(int d_c, int hidden) {
  std::vector<ParamSpec> specs;
  affine(specs, "head.value.W1", "head.value.b1", hidden, d_c);
  affine(specs, "head.value.W2", "head.value.b2", hidden, 2 * hidden);
  affine(specs, "head.value.W3", "head.value.b3", 1, hidden);
  return specs;
}

std::vector<ParamSpec> describe_policy_head(int d_c, int d_t, int hidden) {
  std::vector<ParamSpec> specs;
  affine(specs, "head.policy.W1", "head.policy.b1", hidden, 2 * d_c + d_t);
  affine(specs, "head.policy.W2", "head.policy.b2", 1, hidden);
  return specs;
}

}  // namespace invnet::tasks
