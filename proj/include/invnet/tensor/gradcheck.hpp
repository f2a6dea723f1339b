// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <string>

#include "invnet/tensor/tape.hpp"

namespace invnet::tensor {

struct GradcheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  /// Smallest kink margin seen on the analytic pass. Callers should resample
  /// inputs when this drops below ~1e-4: the sample sits too close to a ReLU
  /// kink or reduction tie for central differences to be trustworthy.
  double min_margin = 0.0;

  bool clean(double margin_threshold = 1e-4) const { return min_margin > margin_threshold; }
};

/// Central-difference check of every trainable parameter coordinate.
/// `build` must deterministically rebuild the loss from the store contents:
/// it is re-run twice per coordinate. 64-bit only.
template <class Build>
GradcheckReport gradcheck(ParamStore<double>& store, Build&& build, double eps = 1e-6) {
  GradcheckReport rep;
  std::map<std::string, Array<double>> grads;
  {
    Tape<double> tape;
    typename Tape<double>::Id loss = build(tape, store);
    tape.backward(loss);
    grads = tape.param_grads();
    rep.min_margin = tape.min_kink_margin();
  }
  auto eval = [&]() {
    Tape<double> tape;
    return static_cast<double>(tape.val(build(tape, store)).data[0]);
  };
  for (const auto& name : store.names()) {
    ParamEntry<double>& e = store.entry(name);
    if (!e.trainable) continue;
    auto git = grads.find(name);
    for (size_t i = 0; i < e.value.size(); ++i) {
      const double orig = e.value.data[i];
      e.value.data[i] = orig + eps;
      const double up = eval();
      e.value.data[i] = orig - eps;
      const double down = eval();
      e.value.data[i] = orig;
      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = git == grads.end() ? 0.0 : git->second.data[i];
      const double rel = std::abs(analytic - numeric) /
                         std::max({1.0, std::abs(analytic), std::abs(numeric)});
      if (rel > rep.max_rel_err) {
        rep.max_rel_err = rel;
        rep.worst_param = name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return rep;
}

/// Replaces every trainable parameter with fresh normal(0, sd) draws. Used to
/// move a model to a generic point before a finite-difference check: freshly
/// constructed stores hold exact zeros (biases, frozen rows) that would park
/// ReLU inputs right on their kink.
template <typename Real>
void randomize_trainable(ParamStore<Real>& store, Rng& rng, double sd = 0.3) {
  for (const auto& name : store.names()) {
    ParamEntry<Real>& e = store.entry(name);
    if (!e.trainable) continue;
    for (auto& v : e.value.data) v = static_cast<Real>(rng.normal(0.0, sd));
  }
}

}  // namespace invnet::tensor
