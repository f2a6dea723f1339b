// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Times each compute kernel under the serial and the OpenMP backend, plus a
// whole-network forward/backward pass, and prints a comparison table.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "invnet/gnn/model.hpp"
#include "invnet/harness/generate.hpp"
#include "invnet/tensor/kernels.hpp"

using namespace invnet;
using tensor::Backend;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<double> random_buf(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_ms();
    fn();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void report(const std::string& name, double serial_ms, double par_ms) {
  std::printf("%-18s %10.3f ms %10.3f ms %8.2fx\n", name.c_str(), serial_ms, par_ms,
              par_ms > 0 ? serial_ms / par_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 2048;
  const int k = 256, n = 256, reps = 5;
  Rng rng(7);

  std::vector<double> x = random_buf(rng, static_cast<size_t>(m) * k);
  std::vector<double> w = random_buf(rng, static_cast<size_t>(n) * k);
  std::vector<double> y(static_cast<size_t>(m) * n);
  std::vector<double> bias = random_buf(rng, n);
  std::vector<int32_t> idx;
  for (int i = 0; i < m; ++i) idx.push_back(static_cast<int32_t>(rng.below(m)));
  std::vector<int32_t> offsets{0};
  std::vector<int32_t> indices;
  {
    int at = 0;
    while (at < m) {
      int len = static_cast<int>(rng.below(8)) + 1;
      for (int i = 0; i < len && at < m; ++i) indices.push_back(at++);
      offsets.push_back(static_cast<int32_t>(indices.size()));
    }
  }
  const int n_seg = static_cast<int>(offsets.size()) - 1;
  std::vector<double> seg_out(static_cast<size_t>(n_seg) * k);

  std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  struct Case {
    std::string name;
    std::function<void()> run;
  };
  std::vector<Case> cases = {
      {"matmul_nt", [&] { tensor::kernels::matmul_nt(x.data(), m, k, w.data(), n, y.data()); }},
      {"matmul_acc_dw",
       [&] {
         std::fill(w.begin(), w.end(), 0.0);
         tensor::kernels::matmul_acc_dw(y.data(), m, n, x.data(), k, w.data());
       }},
      {"relu", [&] { tensor::kernels::relu(x.data(), x.size(), x.data()); }},
      {"tanh", [&] { tensor::kernels::tanh_(x.data(), x.size(), x.data()); }},
      {"gather_rows",
       [&] { tensor::kernels::gather_rows(x.data(), k, idx.data(), m, y.data()); }},
      {"add_row_bias",
       [&] { tensor::kernels::add_row_bias(y.data(), m, n, bias.data(), y.data()); }},
      {"segment_reduce",
       [&] {
         tensor::kernels::segment_reduce(x.data(), k, offsets.data(), n_seg, indices.data(),
                                         tensor::ReduceMode::mean, seg_out.data());
       }},
  };

  for (const Case& c : cases) {
    tensor::active_backend() = Backend::serial;
    double serial_ms = time_best_of(reps, c.run);
    tensor::active_backend() = Backend::openmp;
    double par_ms = time_best_of(reps, c.run);
    report(c.name, serial_ms, par_ms);
  }

  // Whole-network pass over a batch-sized random graph.
  harness::RandomClauseSetOptions opt;
  opt.max_clauses = 64;
  fol::ClauseSet cs = harness::random_clause_set(rng, opt);
  graph::Hypergraph g = graph::build_graph(cs);
  gnn::Dims dims = gnn::Dims::defaults();
  tensor::ParamStore<double> params;
  gnn::InitScheme scheme;
  scheme.seed = 11;
  gnn::register_params(params, dims, {}, scheme);
  gnn::FlatIndex fi = gnn::flatten_index(graph::build_index(g));

  auto forward_backward = [&] {
    tensor::Tape<double> tape;
    gnn::LayerState st = gnn::forward(tape, params, g, dims, {}, &fi);
    auto loss = tape.mse_loss(tape.sum_all(st.t), {0.0});
    tape.backward(loss);
  };
  tensor::active_backend() = Backend::serial;
  double serial_ms = time_best_of(reps, forward_backward);
  tensor::active_backend() = Backend::openmp;
  double par_ms = time_best_of(reps, forward_backward);
  report("network fwd+bwd", serial_ms, par_ms);
  return 0;
}
