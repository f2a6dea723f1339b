// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "invnet/tensor/array.hpp"

namespace invnet::tensor {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <class Real>
struct ParamEntry {
  Array<Real> value;
  bool trainable = true;
  Array<Real> m;  // Adam first moment, sized on first step
  Array<Real> v;  // Adam second moment
};

/// Named parameter registry with insertion order preserved (checkpoint files
/// and gradcheck sweeps iterate in this order).
template <class Real>
class ParamStore {
 public:
  Array<Real>& add(const std::string& name, Array<Real> value, bool trainable = true) {
    if (by_name_.count(name)) throw ConfigError("duplicate parameter '" + name + "'");
    by_name_.emplace(name, names_.size());
    names_.push_back(name);
    entries_.push_back(ParamEntry<Real>{std::move(value), trainable, {}, {}});
    return entries_.back().value;
  }

  bool contains(const std::string& name) const { return by_name_.count(name) != 0; }

  ParamEntry<Real>& entry(const std::string& name) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ConfigError("unknown parameter '" + name + "'");
    return entries_[it->second];
  }
  const ParamEntry<Real>& entry(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ConfigError("unknown parameter '" + name + "'");
    return entries_[it->second];
  }

  Array<Real>& value(const std::string& name) { return entry(name).value; }
  const Array<Real>& value(const std::string& name) const { return entry(name).value; }

  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }

  /// One Adam update from accumulated gradients; missing gradients mean zero
  /// (parameters outside the current compute path stay put aside from decay-free
  /// moment updates, which we skip entirely for untouched parameters).
  void adam_step(const std::map<std::string, Array<Real>>& grads, const AdamConfig& cfg) {
    ++step_;
    const Real b1 = static_cast<Real>(cfg.beta1);
    const Real b2 = static_cast<Real>(cfg.beta2);
    const Real corr1 = static_cast<Real>(1.0 - std::pow(cfg.beta1, step_));
    const Real corr2 = static_cast<Real>(1.0 - std::pow(cfg.beta2, step_));
    for (size_t p = 0; p < entries_.size(); ++p) {
      ParamEntry<Real>& e = entries_[p];
      if (!e.trainable) continue;
      auto git = grads.find(names_[p]);
      if (git == grads.end()) continue;
      const Array<Real>& g = git->second;
      if (!g.same_shape(e.value))
        throw ShapeError("gradient shape mismatch for '" + names_[p] + "'");
      if (e.m.size() != e.value.size()) {
        e.m = Array<Real>(e.value.rows, e.value.cols);
        e.v = Array<Real>(e.value.rows, e.value.cols);
      }
      for (size_t i = 0; i < e.value.size(); ++i) {
        e.m.data[i] = b1 * e.m.data[i] + (Real(1) - b1) * g.data[i];
        e.v.data[i] = b2 * e.v.data[i] + (Real(1) - b2) * g.data[i] * g.data[i];
        const Real mhat = e.m.data[i] / corr1;
        const Real vhat = e.v.data[i] / corr2;
        e.value.data[i] -= static_cast<Real>(cfg.lr) * mhat /
                           (std::sqrt(vhat) + static_cast<Real>(cfg.eps));
      }
    }
  }

  int step_count() const { return step_; }

  template <class Other>
  ParamStore<Other> cast() const {
    ParamStore<Other> out;
    for (size_t p = 0; p < entries_.size(); ++p)
      out.add(names_[p], entries_[p].value.template cast<Other>(), entries_[p].trainable);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<ParamEntry<Real>> entries_;
  std::map<std::string, size_t> by_name_;
  int step_ = 0;
};

}  // namespace invnet::tensor
