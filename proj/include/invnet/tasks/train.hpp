// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "invnet/tasks/data.hpp"
#include "invnet/tasks/heads.hpp"

namespace invnet::tasks {

struct TrainConfig {
  int epochs = 100;
  int minibatch = 50;
  double lr = 1e-3;
  std::string optimizer = "adam";
  uint64_t seed = 0;
  std::string precision = "f64";

  void validate() const {
    if (epochs < 1 || minibatch < 1 || lr <= 0) throw ConfigError("bad training settings");
    if (optimizer != "adam") throw ConfigError("unknown optimizer: " + optimizer);
    if (precision != "f64" && precision != "f32")
      throw ConfigError("unknown precision: " + precision);
  }
};

struct EpochMetric {
  int epoch = 0;
  std::string split;
  double loss = 0.0;
  double accuracy = 0.0;
};

template <typename Real>
struct TrainResult {
  tensor::ParamStore<Real> params;
  std::vector<EpochMetric> metrics;
};

/// One scored symbol occurrence for metric computation: the model's ranked
/// vocabulary guesses, the true label, whether the symbol belongs to the
/// problem's conjecture, and the owning problem.
struct ScoredSymbol {
  std::vector<int32_t> ranking;  // best guess first
  int32_t target = 0;
  bool conjecture = false;
  int32_t problem = 0;
};

struct SymbolMetrics {
  int64_t correct = 0;
  int64_t total = 0;
  int64_t perfect_problems = 0;
  int64_t conjecture_problems = 0;

  double top1() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
  double perfect_rate() const {
    return conjecture_problems
               ? static_cast<double>(perfect_problems) / static_cast<double>(conjecture_problems)
               : 0.0;
  }
};

/// Top-1 accuracy over all scored symbols plus the fraction of problems whose
/// conjecture symbols are all named correctly on the first guess.
SymbolMetrics symbol_metrics(const std::vector<ScoredSymbol>& scored);

namespace detail {

template <typename Real>
struct SymbolBatch {
  graph::Hypergraph g;
  gnn::FlatIndex fi;
  std::vector<int32_t> nodes;
  tensor::Array<Real> target;
  std::vector<int32_t> target_index;
  std::string ids;
};

template <typename Real>
SymbolBatch<Real> make_symbol_batch(const std::vector<SymbolProblem>& problems,
                                    const std::vector<size_t>& batch, int vocab) {
  SymbolBatch<Real> out;
  std::vector<const graph::Hypergraph*> parts;
  for (size_t idx : batch) parts.push_back(&problems[idx].g);
  graph::UnionOffsets off;
  out.g = graph::disjoint_union(parts, &off);
  out.fi = gnn::flatten_index(graph::build_index(out.g));
  for (size_t k = 0; k < batch.size(); ++k) {
    const SymbolProblem& pb = problems[batch[k]];
    for (size_t i = 0; i < pb.scored_nodes.size(); ++i) {
      out.nodes.push_back(pb.scored_nodes[i] + off.symbol[k]);
      out.target_index.push_back(pb.targets[i]);
    }
    out.ids += (k ? "," : "") + pb.id;
  }
  out.target = tensor::Array<Real>(static_cast<int>(out.target_index.size()), vocab);
  for (size_t r = 0; r < out.target_index.size(); ++r)
    out.target.at(static_cast<int>(r), out.target_index[r]) = Real(1);
  return out;
}

inline std::vector<std::vector<size_t>> make_batches(size_t n, int size,
                                                     const std::vector<size_t>& order) {
  std::vector<std::vector<size_t>> batches;
  for (size_t at = 0; at < n; at += static_cast<size_t>(size)) {
    std::vector<size_t> b;
    for (size_t i = at; i < n && i < at + static_cast<size_t>(size); ++i)
      b.push_back(order[i]);
    batches.push_back(std::move(b));
  }
  return batches;
}

inline std::vector<size_t> identity_order(size_t n) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  return order;
}

struct Tally {
  double loss_sum = 0.0;
  int64_t rows = 0;
  int64_t correct = 0;
  void add(double mean_loss, int64_t n, int64_t ok) {
    loss_sum += mean_loss * static_cast<double>(n);
    rows += n;
    correct += ok;
  }
  EpochMetric metric(int epoch, const std::string& split) const {
    EpochMetric m;
    m.epoch = epoch;
    m.split = split;
    m.loss = rows ? loss_sum / static_cast<double>(rows) : 0.0;
    m.accuracy = rows ? static_cast<double>(correct) / static_cast<double>(rows) : 0.0;
    return m;
  }
};

template <typename Real>
int64_t count_top1(const tensor::Array<Real>& logits, const std::vector<int32_t>& target) {
  int64_t ok = 0;
  for (int r = 0; r < logits.rows; ++r) {
    int best = 0;
    for (int c = 1; c < logits.cols; ++c)
      if (logits.at(r, c) > logits.at(r, best)) best = c;
    if (best == target[static_cast<size_t>(r)]) ++ok;
  }
  return ok;
}

}  // namespace detail

/// Minibatched symbol-naming training; one optimizer step per disjoint-union
/// batch, metrics per epoch for both splits. Deterministic given the seed.
template <typename Real>
TrainResult<Real> train_symbols(const SymbolDataset& data, const gnn::Dims& dims,
                                const TrainConfig& cfg,
                                const graph::NodeTypeConfig& node_cfg = {}) {
  cfg.validate();
  if (data.train.empty()) throw ConfigError("empty training set");
  const int vocab = static_cast<int>(data.vocab.size());
  Rng rng(cfg.seed);

  TrainResult<Real> result;
  gnn::InitScheme scheme;
  scheme.seed = rng.fork(1).next_u64();
  gnn::register_params(result.params, dims, node_cfg, scheme);
  Rng head_rng = rng.fork(2);
  register_heads(result.params,
                 describe_symbol_head(dims.d_s[static_cast<size_t>(dims.L)], vocab), head_rng);

  tensor::AdamConfig adam;
  adam.lr = cfg.lr;

  auto run_split = [&](const std::vector<SymbolProblem>& problems,
                       const std::vector<std::vector<size_t>>& batches, bool learn) {
    detail::Tally tally;
    for (const auto& batch : batches) {
      auto b = detail::make_symbol_batch<Real>(problems, batch, vocab);
      try {
        tensor::Tape<Real> tape;
        gnn::LayerState st = gnn::forward(tape, result.params, b.g, dims, node_cfg, &b.fi);
        auto rows = tape.gather_rows(st.s, b.nodes);
        auto logits = symbol_head(tape, result.params, rows);
        auto loss = tape.softmax_xent(logits, b.target);
        tally.add(static_cast<double>(tape.val(loss).data[0]),
                  static_cast<int64_t>(b.nodes.size()),
                  detail::count_top1(tape.val(logits), b.target_index));
        if (learn) {
          tape.backward(loss);
          result.params.adam_step(tape.param_grads(), adam);
        }
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " [examples " + b.ids + "]");
      }
    }
    return tally;
  };

  const auto test_batches =
      detail::make_batches(data.test.size(), cfg.minibatch, detail::identity_order(data.test.size()));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto order = detail::identity_order(data.train.size());
    rng.fork(100 + static_cast<uint64_t>(epoch)).shuffle(order);
    auto tally = run_split(data.train, detail::make_batches(data.train.size(), cfg.minibatch, order), true);
    result.metrics.push_back(tally.metric(epoch, "train"));
    if (!data.test.empty()) {
      auto test_tally = run_split(data.test, test_batches, false);
      result.metrics.push_back(test_tally.metric(epoch, "test"));
    }
  }
  return result;
}

/// Embeds each problem's scored symbols and records ranked vocabulary
/// predictions for metric computation.
template <typename Real>
std::vector<ScoredSymbol> predict_symbols(const std::vector<SymbolProblem>& problems,
                                          tensor::ParamStore<Real>& params,
                                          const gnn::Dims& dims,
                                          const graph::NodeTypeConfig& node_cfg = {}) {
  std::vector<ScoredSymbol> scored;
  for (size_t pi = 0; pi < problems.size(); ++pi) {
    const SymbolProblem& pb = problems[pi];
    tensor::Tape<Real> tape;
    gnn::LayerState st = gnn::forward(tape, params, pb.g, dims, node_cfg);
    auto logits_id = symbol_head(tape, params, tape.gather_rows(st.s, pb.scored_nodes));
    const auto& logits = tape.val(logits_id);
    for (size_t i = 0; i < pb.scored_nodes.size(); ++i) {
      ScoredSymbol s;
      s.target = pb.targets[i];
      s.conjecture = pb.conjecture_scored[i];
      s.problem = static_cast<int32_t>(pi);
      s.ranking.resize(static_cast<size_t>(logits.cols));
      std::iota(s.ranking.begin(), s.ranking.end(), 0);
      const int r = static_cast<int>(i);
      std::stable_sort(s.ranking.begin(), s.ranking.end(), [&](int32_t a, int32_t b) {
        return logits.at(r, a) > logits.at(r, b);
      });
      scored.push_back(std::move(s));
    }
  }
  return scored;
}

namespace detail {

template <typename Real>
struct PremiseBatch {
  graph::Hypergraph g;
  gnn::FlatIndex fi;
  tensor::Segments conj, prem;
  std::vector<Real> labels;
  std::string ids;
};

template <typename Real>
PremiseBatch<Real> make_premise_batch(const std::vector<PremiseProblem>& problems,
                                      const std::vector<size_t>& batch) {
  PremiseBatch<Real> out;
  std::vector<const graph::Hypergraph*> parts;
  for (size_t idx : batch) parts.push_back(&problems[idx].g);
  graph::UnionOffsets off;
  out.g = graph::disjoint_union(parts, &off);
  out.fi = gnn::flatten_index(graph::build_index(out.g));
  std::vector<std::vector<int32_t>> conj_lists, prem_lists;
  for (size_t k = 0; k < batch.size(); ++k) {
    const PremiseProblem& pb = problems[batch[k]];
    std::vector<int32_t> conj;
    for (int32_t c : pb.conjecture_clauses) conj.push_back(c + off.clause[k]);
    for (size_t cand = 0; cand < pb.candidate_clauses.size(); ++cand) {
      std::vector<int32_t> prem;
      for (int32_t c : pb.candidate_clauses[cand]) prem.push_back(c + off.clause[k]);
      conj_lists.push_back(conj);
      prem_lists.push_back(std::move(prem));
      out.labels.push_back(static_cast<Real>(pb.labels[cand]));
    }
    out.ids += (k ? "," : "") + pb.id;
  }
  out.conj = tensor::Segments::from_lists(conj_lists);
  out.prem = tensor::Segments::from_lists(prem_lists);
  return out;
}

}  // namespace detail

/// Minibatched premise-selection training with a binary cross-entropy loss.
template <typename Real>
TrainResult<Real> train_premises(const PremiseDataset& data, const gnn::Dims& dims,
                                 const TrainConfig& cfg,
                                 const graph::NodeTypeConfig& node_cfg = {}) {
  cfg.validate();
  if (data.train.empty()) throw ConfigError("empty training set");
  Rng rng(cfg.seed);

  TrainResult<Real> result;
  gnn::InitScheme scheme;
  scheme.seed = rng.fork(1).next_u64();
  gnn::register_params(result.params, dims, node_cfg, scheme);
  Rng head_rng = rng.fork(2);
  register_heads(result.params,
                 describe_premise_head(dims.d_c[static_cast<size_t>(dims.L)]), head_rng);

  tensor::AdamConfig adam;
  adam.lr = cfg.lr;

  auto run_split = [&](const std::vector<PremiseProblem>& problems,
                       const std::vector<std::vector<size_t>>& batches, bool learn) {
    detail::Tally tally;
    for (const auto& batch : batches) {
      auto b = detail::make_premise_batch<Real>(problems, batch);
      try {
        tensor::Tape<Real> tape;
        gnn::LayerState st = gnn::forward(tape, result.params, b.g, dims, node_cfg, &b.fi);
        auto probs = premise_head(tape, result.params, st.c, b.conj, b.prem);
        auto loss = tape.bce_loss(probs, b.labels);
        const auto& p = tape.val(probs);
        int64_t ok = 0;
        for (int r = 0; r < p.rows; ++r)
          if ((p.at(r, 0) > Real(0.5)) == (b.labels[static_cast<size_t>(r)] > Real(0.5))) ++ok;
        tally.add(static_cast<double>(tape.val(loss).data[0]),
                  static_cast<int64_t>(b.labels.size()), ok);
        if (learn) {
          tape.backward(loss);
          result.params.adam_step(tape.param_grads(), adam);
        }
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " [examples " + b.ids + "]");
      }
    }
    return tally;
  };

  const auto test_batches =
      detail::make_batches(data.test.size(), cfg.minibatch, detail::identity_order(data.test.size()));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto order = detail::identity_order(data.train.size());
    rng.fork(100 + static_cast<uint64_t>(epoch)).shuffle(order);
    auto tally = run_split(data.train, detail::make_batches(data.train.size(), cfg.minibatch, order), true);
    result.metrics.push_back(tally.metric(epoch, "train"));
    if (!data.test.empty()) {
      auto test_tally = run_split(data.test, test_batches, false);
      result.metrics.push_back(test_tally.metric(epoch, "test"));
    }
  }
  return result;
}

}  // namespace invnet::tasks
