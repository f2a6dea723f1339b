// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "invnet/tensor/array.hpp"
#include "invnet/tensor/kernels.hpp"
#include "invnet/tensor/params.hpp"

namespace invnet::tensor {

/// Reverse-mode autodiff over the kernel primitives. One tape serves one
/// forward/backward pass. Every op validates shapes up front and rejects
/// non-finite outputs naming the primitive. The tape also tracks how close
/// the pass came to a non-differentiable point (ReLU kink, max/min tie,
/// clamp boundary); gradcheck uses that margin to discard unlucky samples.
template <class Real>
class Tape {
 public:
  using Id = int32_t;

  Id constant(Array<Real> v, const char* op = "constant") { return push(std::move(v), op, {}); }

  /// Copies the parameter value into a leaf; one leaf per name per tape, so
  /// repeated requests share the node and fan-out accumulates naturally.
  Id param(ParamStore<Real>& store, const std::string& name) {
    auto it = param_ids_.find(name);
    if (it != param_ids_.end()) return it->second;
    Id id = push(store.entry(name).value, "param", {});
    param_ids_.emplace(name, id);
    if (store.entry(name).trainable) trainable_params_.emplace_back(name, id);
    return id;
  }

  // y = x * w^T, with w holding one output row per output column of y.
  Id linear(Id w, Id x) {
    const Array<Real>& W = val(w);
    const Array<Real>& X = val(x);
    if (X.cols != W.cols)
      throw ShapeError("linear: inner dimensions disagree " + X.shape_str() + " vs " +
                       W.shape_str());
    Array<Real> y(X.rows, W.rows);
    kernels::matmul_nt(X.ptr(), X.rows, X.cols, W.ptr(), W.rows, y.ptr());
    Id out = push(std::move(y), "linear", {w, x});
    nodes_[static_cast<size_t>(out)].back = [w, x, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      const Array<Real>& W2 = t.val(w);
      const Array<Real>& X2 = t.val(x);
      kernels::matmul_acc_dx(dy.ptr(), dy.rows, dy.cols, W2.ptr(), W2.cols,
                             t.grad_buf(x).ptr());
      kernels::matmul_acc_dw(dy.ptr(), dy.rows, dy.cols, X2.ptr(), X2.cols,
                             t.grad_buf(w).ptr());
    };
    return out;
  }

  Id add(Id a, Id b) {
    const Array<Real>& A = val(a);
    const Array<Real>& B = val(b);
    if (!A.same_shape(B))
      throw ShapeError("add: shapes disagree " + A.shape_str() + " vs " + B.shape_str());
    Array<Real> y(A.rows, A.cols);
    for (size_t i = 0; i < y.size(); ++i) y.data[i] = A.data[i] + B.data[i];
    Id out = push(std::move(y), "add", {a, b});
    nodes_[static_cast<size_t>(out)].back = [a, b, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& da = t.grad_buf(a);
      Array<Real>& db = t.grad_buf(b);
      for (size_t i = 0; i < dy.size(); ++i) {
        da.data[i] += dy.data[i];
        db.data[i] += dy.data[i];
      }
    };
    return out;
  }

  Id add_row_bias(Id x, Id b) {
    const Array<Real>& X = val(x);
    const Array<Real>& B = val(b);
    if (B.rows != 1 || B.cols != X.cols)
      throw ShapeError("add_row_bias: bias " + B.shape_str() + " does not fit " + X.shape_str());
    Array<Real> y(X.rows, X.cols);
    kernels::add_row_bias(X.ptr(), X.rows, X.cols, B.ptr(), y.ptr());
    Id out = push(std::move(y), "add_row_bias", {x, b});
    nodes_[static_cast<size_t>(out)].back = [x, b, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& dx = t.grad_buf(x);
      Array<Real>& db = t.grad_buf(b);
      for (size_t i = 0; i < dy.size(); ++i) dx.data[i] += dy.data[i];
      for (int r = 0; r < dy.rows; ++r)
        for (int c = 0; c < dy.cols; ++c) db.data[static_cast<size_t>(c)] += dy.at(r, c);
    };
    return out;
  }

  Id relu(Id x) {
    const Array<Real>& X = val(x);
    Array<Real> y(X.rows, X.cols);
    kernels::relu(X.ptr(), X.size(), y.ptr());
    for (Real v : X.data) note_margin(std::abs(static_cast<double>(v)));
    Id out = push(std::move(y), "relu", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      const Array<Real>& X2 = t.val(x);
      Array<Real>& dx = t.grad_buf(x);
      for (size_t i = 0; i < dy.size(); ++i)
        if (X2.data[i] > Real(0)) dx.data[i] += dy.data[i];
    };
    return out;
  }

  Id tanh_(Id x) {
    const Array<Real>& X = val(x);
    Array<Real> y(X.rows, X.cols);
    kernels::tanh_(X.ptr(), X.size(), y.ptr());
    Id out = push(std::move(y), "tanh", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      const Array<Real>& Y = t.val(out);
      Array<Real>& dx = t.grad_buf(x);
      for (size_t i = 0; i < dy.size(); ++i)
        dx.data[i] += dy.data[i] * (Real(1) - Y.data[i] * Y.data[i]);
    };
    return out;
  }

  Id sigmoid(Id x) {
    const Array<Real>& X = val(x);
    Array<Real> y(X.rows, X.cols);
    kernels::sigmoid(X.ptr(), X.size(), y.ptr());
    Id out = push(std::move(y), "sigmoid", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      const Array<Real>& Y = t.val(out);
      Array<Real>& dx = t.grad_buf(x);
      for (size_t i = 0; i < dy.size(); ++i)
        dx.data[i] += dy.data[i] * Y.data[i] * (Real(1) - Y.data[i]);
    };
    return out;
  }

  Id concat_cols(Id a, Id b) {
    const Array<Real>& A = val(a);
    const Array<Real>& B = val(b);
    if (A.rows != B.rows)
      throw ShapeError("concat_cols: row counts disagree " + A.shape_str() + " vs " +
                       B.shape_str());
    Array<Real> y(A.rows, A.cols + B.cols);
    for (int r = 0; r < A.rows; ++r) {
      for (int c = 0; c < A.cols; ++c) y.at(r, c) = A.at(r, c);
      for (int c = 0; c < B.cols; ++c) y.at(r, A.cols + c) = B.at(r, c);
    }
    Id out = push(std::move(y), "concat_cols", {a, b});
    nodes_[static_cast<size_t>(out)].back = [a, b, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& da = t.grad_buf(a);
      Array<Real>& db = t.grad_buf(b);
      for (int r = 0; r < dy.rows; ++r) {
        for (int c = 0; c < da.cols; ++c) da.at(r, c) += dy.at(r, c);
        for (int c = 0; c < db.cols; ++c) db.at(r, c) += dy.at(r, da.cols + c);
      }
    };
    return out;
  }

  Id transpose(Id x) {
    const Array<Real>& X = val(x);
    Array<Real> y(X.cols, X.rows);
    for (int r = 0; r < X.rows; ++r)
      for (int c = 0; c < X.cols; ++c) y.at(c, r) = X.at(r, c);
    Id out = push(std::move(y), "transpose", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& dx = t.grad_buf(x);
      for (int r = 0; r < dy.rows; ++r)
        for (int c = 0; c < dy.cols; ++c) dx.at(c, r) += dy.at(r, c);
    };
    return out;
  }

  /// Vertical concatenation of same-width blocks.
  Id stack_rows(const std::vector<Id>& parts) {
    if (parts.empty()) throw ShapeError("stack_rows: nothing to stack");
    int cols = val(parts[0]).cols;
    int rows = 0;
    for (Id p : parts) {
      if (val(p).cols != cols)
        throw ShapeError("stack_rows: column counts disagree");
      rows += val(p).rows;
    }
    Array<Real> y(rows, cols);
    int at = 0;
    for (Id p : parts) {
      const Array<Real>& P = val(p);
      std::copy(P.data.begin(), P.data.end(), y.data.begin() + static_cast<size_t>(at) * cols);
      at += P.rows;
    }
    Id out = push(std::move(y), "stack_rows", parts);
    nodes_[static_cast<size_t>(out)].back = [parts, out](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      int row = 0;
      for (Id p : parts) {
        Array<Real>& dp = t.grad_buf(p);
        for (int r = 0; r < dp.rows; ++r, ++row)
          for (int c = 0; c < dp.cols; ++c) dp.at(r, c) += dy.at(row, c);
      }
    };
    return out;
  }

  Id gather_rows(Id x, std::vector<int32_t> idx) {
    const Array<Real>& X = val(x);
    for (int32_t i : idx)
      if (i < 0 || i >= X.rows) throw ShapeError("gather_rows: index out of range");
    Array<Real> y(static_cast<int>(idx.size()), X.cols);
    kernels::gather_rows(X.ptr(), X.cols, idx.data(), y.rows, y.ptr());
    Id out = push(std::move(y), "gather_rows", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out, idx = std::move(idx)](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& dx = t.grad_buf(x);
      // Scatter-add; duplicate indices make this inherently serial.
      for (int r = 0; r < dy.rows; ++r)
        for (int c = 0; c < dy.cols; ++c) dx.at(idx[static_cast<size_t>(r)], c) += dy.at(r, c);
    };
    return out;
  }

  Id scale_rows(Id x, std::vector<Real> factor) {
    const Array<Real>& X = val(x);
    if (static_cast<int>(factor.size()) != X.rows)
      throw ShapeError("scale_rows: one factor per row required");
    Array<Real> y(X.rows, X.cols);
    kernels::scale_rows(X.ptr(), X.rows, X.cols, factor.data(), y.ptr());
    Id out = push(std::move(y), "scale_rows", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out, factor = std::move(factor)](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& dx = t.grad_buf(x);
      for (int r = 0; r < dy.rows; ++r)
        for (int c = 0; c < dy.cols; ++c) dx.at(r, c) += factor[static_cast<size_t>(r)] * dy.at(r, c);
    };
    return out;
  }

  Id segment_reduce(Id x, Segments segs, ReduceMode mode) {
    const Array<Real>& X = val(x);
    for (int32_t i : segs.indices)
      if (i < 0 || i >= X.rows) throw ShapeError("segment_reduce: index out of range");
    Array<Real> y(segs.count(), X.cols);
    kernels::segment_reduce(X.ptr(), X.cols, segs.offsets.data(), segs.count(),
                            segs.indices.data(), mode, y.ptr());
    if (mode != ReduceMode::mean) note_tie_margins(X, segs, y);
    const char* op = mode == ReduceMode::max   ? "segment_max"
                     : mode == ReduceMode::min ? "segment_min"
                                               : "segment_mean";
    Id out = push(std::move(y), op, {x});
    nodes_[static_cast<size_t>(out)].back = [x, out, segs = std::move(segs), mode](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      const Array<Real>& X2 = t.val(x);
      const Array<Real>& Y = t.val(out);
      Array<Real>& dx = t.grad_buf(x);
      for (int s = 0; s < segs.count(); ++s) {
        int b = segs.begin(s), e = segs.end(s);
        if (b == e) continue;
        if (mode == ReduceMode::mean) {
          const Real inv = Real(1) / Real(e - b);
          for (int i = b; i < e; ++i)
            for (int c = 0; c < dy.cols; ++c)
              dx.at(segs.indices[static_cast<size_t>(i)], c) += dy.at(s, c) * inv;
        } else {
          // Route to the first achiever of the extremum (lowest gather index).
          for (int c = 0; c < dy.cols; ++c) {
            for (int i = b; i < e; ++i) {
              if (X2.at(segs.indices[static_cast<size_t>(i)], c) == Y.at(s, c)) {
                dx.at(segs.indices[static_cast<size_t>(i)], c) += dy.at(s, c);
                break;
              }
            }
          }
        }
      }
    };
    return out;
  }

  /// concat(max, mean) over each segment; dimension doubles.
  Id red(Id x, const Segments& segs) {
    return concat_cols(segment_reduce(x, segs, ReduceMode::max),
                       segment_reduce(x, segs, ReduceMode::mean));
  }

  /// concat(max + min, mean); odd in its input, which keeps the symbol update
  /// sign-equivariant.
  Id red_prime(Id x, const Segments& segs) {
    return concat_cols(add(segment_reduce(x, segs, ReduceMode::max),
                           segment_reduce(x, segs, ReduceMode::min)),
                       segment_reduce(x, segs, ReduceMode::mean));
  }

  Id zero_row(Id x, int row) {
    const Array<Real>& X = val(x);
    if (row < 0 || row >= X.rows) throw ShapeError("zero_row: row out of range");
    Array<Real> y = X;
    for (int c = 0; c < y.cols; ++c) y.at(row, c) = Real(0);
    Id out = push(std::move(y), "zero_row", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out, row](Tape& t) {
      const Array<Real>& dy = t.nodes_[static_cast<size_t>(out)].grad;
      Array<Real>& dx = t.grad_buf(x);
      for (int r = 0; r < dy.rows; ++r) {
        if (r == row) continue;
        for (int c = 0; c < dy.cols; ++c) dx.at(r, c) += dy.at(r, c);
      }
    };
    return out;
  }

  Id sum_all(Id x) {
    const Array<Real>& X = val(x);
    Array<Real> y(1, 1);
    Real acc = 0;
    for (Real v : X.data) acc += v;
    y.data[0] = acc;
    Id out = push(std::move(y), "sum_all", {x});
    nodes_[static_cast<size_t>(out)].back = [x, out](Tape& t) {
      const Real g = t.nodes_[static_cast<size_t>(out)].grad.data[0];
      Array<Real>& dx = t.grad_buf(x);
      for (size_t i = 0; i < dx.size(); ++i) dx.data[i] += g;
    };
    return out;
  }

  /// Mean binary cross-entropy over all entries; probabilities are clamped to
  /// [1e-7, 1 - 1e-7] before the logs.
  Id bce_loss(Id probs, std::vector<Real> targets) {
    const Array<Real>& P = val(probs);
    if (P.size() != targets.size()) throw ShapeError("bce_loss: one target per probability");
    const double lo = 1e-7, hi = 1.0 - 1e-7;
    double acc = 0;
    for (size_t i = 0; i < P.size(); ++i) {
      double p = std::min(hi, std::max(lo, static_cast<double>(P.data[i])));
      double t = static_cast<double>(targets[i]);
      acc += -(t * std::log(p) + (1.0 - t) * std::log(1.0 - p));
      note_margin(std::abs(static_cast<double>(P.data[i]) - lo));
      note_margin(std::abs(hi - static_cast<double>(P.data[i])));
    }
    Array<Real> y(1, 1);
    y.data[0] = static_cast<Real>(acc / static_cast<double>(P.size()));
    Id out = push(std::move(y), "bce_loss", {probs});
    nodes_[static_cast<size_t>(out)].back = [probs, out, targets = std::move(targets), lo,
                                             hi](Tape& t) {
      const Real g = t.nodes_[static_cast<size_t>(out)].grad.data[0];
      const Array<Real>& P2 = t.val(probs);
      Array<Real>& dp = t.grad_buf(probs);
      const double n = static_cast<double>(P2.size());
      for (size_t i = 0; i < P2.size(); ++i) {
        double p = static_cast<double>(P2.data[i]);
        if (p <= lo || p >= hi) continue;  // clamped region: zero slope
        double tt = static_cast<double>(targets[i]);
        dp.data[i] += g * static_cast<Real>((p - tt) / (p * (1.0 - p) * n));
      }
    };
    return out;
  }

  /// Mean softmax cross-entropy of each row of `logits` against the matching
  /// row of the target distribution (rows sum to 1).
  Id softmax_xent(Id logits, Array<Real> target) {
    const Array<Real>& L = val(logits);
    if (!L.same_shape(target)) throw ShapeError("softmax_xent: target shape mismatch");
    double acc = 0;
    for (int r = 0; r < L.rows; ++r) {
      double mx = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < L.cols; ++c) mx = std::max(mx, static_cast<double>(L.at(r, c)));
      double lse = 0;
      for (int c = 0; c < L.cols; ++c) lse += std::exp(static_cast<double>(L.at(r, c)) - mx);
      lse = mx + std::log(lse);
      for (int c = 0; c < L.cols; ++c)
        acc += static_cast<double>(target.at(r, c)) * (lse - static_cast<double>(L.at(r, c)));
    }
    Array<Real> y(1, 1);
    y.data[0] = static_cast<Real>(acc / std::max(1, L.rows));
    Id out = push(std::move(y), "softmax_xent", {logits});
    nodes_[static_cast<size_t>(out)].back = [logits, out, target = std::move(target)](Tape& t) {
      const Real g = t.nodes_[static_cast<size_t>(out)].grad.data[0];
      const Array<Real>& L2 = t.val(logits);
      Array<Real>& dl = t.grad_buf(logits);
      const double inv_m = 1.0 / std::max(1, L2.rows);
      for (int r = 0; r < L2.rows; ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < L2.cols; ++c) mx = std::max(mx, static_cast<double>(L2.at(r, c)));
        double z = 0;
        for (int c = 0; c < L2.cols; ++c) z += std::exp(static_cast<double>(L2.at(r, c)) - mx);
        for (int c = 0; c < L2.cols; ++c) {
          double p = std::exp(static_cast<double>(L2.at(r, c)) - mx) / z;
          dl.at(r, c) += g * static_cast<Real>((p - static_cast<double>(target.at(r, c))) * inv_m);
        }
      }
    };
    return out;
  }

  Id mse_loss(Id pred, std::vector<Real> targets) {
    const Array<Real>& P = val(pred);
    if (P.size() != targets.size()) throw ShapeError("mse_loss: one target per prediction");
    double acc = 0;
    for (size_t i = 0; i < P.size(); ++i) {
      double d = static_cast<double>(P.data[i]) - static_cast<double>(targets[i]);
      acc += d * d;
    }
    Array<Real> y(1, 1);
    y.data[0] = static_cast<Real>(acc / static_cast<double>(P.size()));
    Id out = push(std::move(y), "mse_loss", {pred});
    nodes_[static_cast<size_t>(out)].back = [pred, out, targets = std::move(targets)](Tape& t) {
      const Real g = t.nodes_[static_cast<size_t>(out)].grad.data[0];
      const Array<Real>& P2 = t.val(pred);
      Array<Real>& dp = t.grad_buf(pred);
      const Real n = static_cast<Real>(P2.size());
      for (size_t i = 0; i < P2.size(); ++i)
        dp.data[i] += g * Real(2) * (P2.data[i] - targets[i]) / n;
    };
    return out;
  }

  const Array<Real>& val(Id id) const { return nodes_[static_cast<size_t>(id)].value; }
  const Array<Real>& grad(Id id) const { return nodes_[static_cast<size_t>(id)].grad; }
  const char* op_name(Id id) const { return nodes_[static_cast<size_t>(id)].op; }
  size_t node_count() const { return nodes_.size(); }

  void backward(Id loss) {
    const Array<Real>& L = val(loss);
    if (L.size() != 1) throw ShapeError("backward: loss must be scalar");
    for (auto& n : nodes_)
      if (n.grad.size() != n.value.size()) n.grad = Array<Real>(n.value.rows, n.value.cols);
    nodes_[static_cast<size_t>(loss)].grad.data[0] = Real(1);
    for (Id id = loss; id >= 0; --id) {
      Node& n = nodes_[static_cast<size_t>(id)];
      if (!n.back) continue;
      bool any = false;
      for (Real g : n.grad.data)
        if (g != Real(0)) {
          any = true;
          break;
        }
      if (!any) continue;
      n.back(*this);
      for (Id in : n.inputs)
        if (!nodes_[static_cast<size_t>(in)].grad.all_finite())
          throw NumericError(std::string(n.op) + ": non-finite gradient");
    }
  }

  /// Gradients of the loss with respect to every trainable parameter leaf.
  std::map<std::string, Array<Real>> param_grads() const {
    std::map<std::string, Array<Real>> out;
    for (const auto& [name, id] : trainable_params_) out.emplace(name, grad(id));
    return out;
  }

  const std::vector<std::pair<std::string, Id>>& trainable_param_ids() const {
    return trainable_params_;
  }

  /// Smallest distance to a kink encountered while recording (ReLU input
  /// magnitude, top-two gap in max/min reductions, distance to the BCE clamp).
  double min_kink_margin() const { return min_margin_; }

 private:
  struct Node {
    Array<Real> value;
    Array<Real> grad;
    std::vector<Id> inputs;
    std::function<void(Tape&)> back;
    const char* op;
  };

  Id push(Array<Real> value, const char* op, std::vector<Id> inputs) {
    if (!value.all_finite()) throw NumericError(std::string(op) + ": non-finite value");
    nodes_.push_back(Node{std::move(value), {}, std::move(inputs), nullptr, op});
    return static_cast<Id>(nodes_.size() - 1);
  }

  Array<Real>& grad_buf(Id id) { return nodes_[static_cast<size_t>(id)].grad; }

  void note_margin(double m) { min_margin_ = std::min(min_margin_, m); }

  // Exact ties are left alone: they arise from nodes that compute the very
  // same function of the parameters (shared type rows, isomorphic subtrees),
  // where routing to the first achiever still differentiates correctly. The
  // hazard for finite differences is a small nonzero runner-up gap, which a
  // perturbation can flip.
  void note_tie_margins(const Array<Real>& X, const Segments& segs, const Array<Real>& y) {
    for (int s = 0; s < segs.count(); ++s) {
      int b = segs.begin(s), e = segs.end(s);
      if (e - b < 2) continue;
      for (int c = 0; c < X.cols; ++c) {
        const double best = static_cast<double>(y.at(s, c));
        double gap = std::numeric_limits<double>::infinity();
        for (int i = b; i < e; ++i) {
          double v = static_cast<double>(X.at(segs.indices[static_cast<size_t>(i)], c));
          if (v != best) gap = std::min(gap, std::abs(best - v));
        }
        note_margin(gap);
      }
    }
  }

  std::vector<Node> nodes_;
  std::map<std::string, Id> param_ids_;
  std::vector<std::pair<std::string, Id>> trainable_params_;
  double min_margin_ = std::numeric_limits<double>::infinity();
};

}  // namespace invnet::tensor
