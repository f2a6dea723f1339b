// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "invnet/common.hpp"
#include "invnet/graph/hypergraph.hpp"
#include "invnet/tensor/params.hpp"
#include "invnet/tensor/tape.hpp"

namespace invnet::gnn {

/// Embedding widths per layer boundary: d_*[0] is the initial width,
/// d_*[i] the width after layer i, for i = 0..L.
struct Dims {
  int L = 0;
  std::vector<int> d_c, d_s, d_t;

  static Dims make(int layers, int c0, int s0, int t0, int c_hidden, int s_hidden,
                   int t_hidden);
  /// Five layers; clause/term vectors start at width 4, symbols at 1,
  /// then 32/64/32 throughout.
  static Dims defaults();
  void validate() const;
};

/// Initialization recipe. Matrices draw from uniform(-a, a) with
/// a = sqrt(matrix_gain / (fan_in + fan_out)); biases start at zero; node
/// type vectors draw from normal(0, type_vector_sd) unless frozen.
/// Bit-reproducible for a fixed seed and parameter list.
struct InitScheme {
  uint64_t seed = 0;
  double matrix_gain = 6.0;
  double type_vector_sd = 0.1;
};

enum class ParamKind { matrix, bias, type_vector };

struct ParamSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  bool trainable = true;
  ParamKind kind = ParamKind::matrix;
};

/// Every embedding-network parameter, in registration order, with its shape.
/// Sign-symmetric symbol types and the T0 sentinel get frozen zero vectors.
std::vector<ParamSpec> describe(const Dims& dims, const graph::NodeTypeConfig& cfg = {});

/// One gather family flattened for tensor kernels: entry e of the family
/// contributes row e, built from node rows a[e], b[e], c[e] and sign g[e];
/// segs groups entries by receiving node.
struct FlatFamily {
  std::vector<int32_t> a, b, c;
  std::vector<int32_t> g;
  tensor::Segments segs;
  bool empty() const { return a.empty(); }
};

struct FlatIndex {
  tensor::Segments ct;  // term rows gathered per clause
  tensor::Segments tc;  // clause rows gathered per term
  FlatFamily st;        // receivers: symbols; (a,b,c) = (parent, child1, child2)
  FlatFamily ts1;       // receivers: parent terms; (a,b,c) = (child1, child2, symbol)
  FlatFamily ts2;       // receivers: child1 terms; (a,b,c) = (parent, child2, symbol)
  FlatFamily ts3;       // receivers: child2 terms; (a,b,c) = (parent, child1, symbol)
};

FlatIndex flatten_index(const graph::FIndex& idx);

/// Tape ids of the per-class embedding matrices at one layer boundary.
struct LayerState {
  int32_t c = -1;
  int32_t s = -1;
  int32_t t = -1;
};

template <typename Real>
void register_param_specs(tensor::ParamStore<Real>& store, const std::vector<ParamSpec>& specs,
                          Rng& rng, const InitScheme& scheme) {
  for (const ParamSpec& spec : specs) {
    tensor::Array<Real> value(spec.rows, spec.cols);
    if (spec.kind == ParamKind::matrix) {
      double a = std::sqrt(scheme.matrix_gain / (spec.rows + spec.cols));
      for (auto& e : value.data) e = static_cast<Real>(rng.uniform(-a, a));
    } else if (spec.kind == ParamKind::type_vector && spec.trainable) {
      for (auto& e : value.data) e = static_cast<Real>(rng.normal(0.0, scheme.type_vector_sd));
    }
    store.add(spec.name, std::move(value), spec.trainable);
  }
}

template <typename Real>
void register_params(tensor::ParamStore<Real>& store, const Dims& dims,
                     const graph::NodeTypeConfig& cfg, const InitScheme& scheme) {
  Rng rng(scheme.seed);
  register_param_specs(store, describe(dims, cfg), rng, scheme);
}

/// Layer-0 state: each node's row is the learned vector of its type tag.
/// The T0 sentinel row is forced to zero so downstream gathers read zeros.
template <typename Real>
LayerState init_embeddings(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& params,
                           const graph::Hypergraph& g, const graph::NodeTypeConfig& cfg = {}) {
  auto embed = [&](const std::vector<std::string>& tags, const std::string& prefix,
                   const std::vector<std::string>& node_tags) {
    std::vector<int32_t> rows;
    for (const auto& tag : tags) rows.push_back(tape.param(params, prefix + tag));
    std::vector<int32_t> which;
    which.reserve(node_tags.size());
    for (const auto& tag : node_tags) {
      auto it = std::find(tags.begin(), tags.end(), tag);
      if (it == tags.end()) throw ConfigError("unknown node type tag: " + tag);
      which.push_back(static_cast<int32_t>(it - tags.begin()));
    }
    return tape.gather_rows(tape.stack_rows(rows), std::move(which));
  };
  LayerState st;
  st.c = embed(cfg.clause_tags(), "init.c.", g.clause_type);
  st.s = embed(cfg.symbol_tags(), "init.s.", g.symbol_type);
  st.t = tape.zero_row(embed(cfg.term_tags(), "init.t.", g.term_type), graph::Hypergraph::kT0);
  return st;
}

/// One message-passing layer. All reads come from the layer-i state; clause,
/// symbol and term rows update simultaneously. The symbol update carries no
/// additive bias outside the reduction, which keeps it odd under sign flips.
template <typename Real>
LayerState message_pass(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& params,
                        const FlatIndex& fi, const LayerState& in, int layer) {
  using Id = int32_t;
  auto P = [&](const std::string& stem) {
    return tape.param(params, "L" + std::to_string(layer) + "." + stem);
  };
  auto signs = [](const FlatFamily& fam) {
    std::vector<Real> g(fam.g.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = static_cast<Real>(fam.g[i]);
    return g;
  };

  Id c_new = tape.relu(tape.add_row_bias(
      tape.add(tape.linear(P("M_c"), in.c), tape.linear(P("M_ct"), tape.red(in.t, fi.ct))),
      P("B_c")));

  Id x = tape.add_row_bias(
      tape.add(tape.add(tape.linear(P("M_ts.1"), tape.gather_rows(in.t, fi.st.a)),
                        tape.linear(P("M_ts.2"), tape.gather_rows(in.t, fi.st.b))),
               tape.linear(P("M_ts.3"), tape.gather_rows(in.t, fi.st.c))),
      P("B_ts"));
  Id s_new = tape.tanh_(tape.add(
      tape.linear(P("M_s"), in.s),
      tape.linear(P("M_ts"), tape.red_prime(tape.scale_rows(x, signs(fi.st)), fi.st.segs))));

  Id acc = tape.add(tape.linear(P("M_t"), in.t),
                    tape.linear(P("M_tc"), tape.red(in.c, fi.tc)));
  const FlatFamily* fams[3] = {&fi.ts1, &fi.ts2, &fi.ts3};
  for (int d = 1; d <= 3; ++d) {
    const FlatFamily& fam = *fams[d - 1];
    std::string sd = std::to_string(d);
    Id y = tape.add_row_bias(
        tape.add(tape.add(tape.linear(P("M_st.1." + sd), tape.gather_rows(in.t, fam.a)),
                          tape.linear(P("M_st.2." + sd), tape.gather_rows(in.t, fam.b))),
                 tape.scale_rows(tape.linear(P("M_st.3." + sd), tape.gather_rows(in.s, fam.c)),
                                 signs(fam))),
        P("B_st"));
    acc = tape.add(acc, tape.linear(P("M_st." + sd), tape.red(tape.relu(y), fam.segs)));
  }
  Id t_new = tape.zero_row(tape.relu(tape.add_row_bias(acc, P("B_t"))),
                           graph::Hypergraph::kT0);

  return LayerState{c_new, s_new, t_new};
}

/// Initial embeddings followed by dims.L message-passing layers.
template <typename Real>
LayerState forward(tensor::Tape<Real>& tape, tensor::ParamStore<Real>& params,
                   const graph::Hypergraph& g, const Dims& dims,
                   const graph::NodeTypeConfig& cfg = {},
                   const FlatIndex* prebuilt = nullptr) {
  FlatIndex local;
  if (!prebuilt) {
    local = flatten_index(graph::build_index(g));
    prebuilt = &local;
  }
  LayerState st = init_embeddings(tape, params, g, cfg);
  for (int i = 0; i < dims.L; ++i) st = message_pass(tape, params, *prebuilt, st, i);
  return st;
}

}  // namespace invnet::gnn
