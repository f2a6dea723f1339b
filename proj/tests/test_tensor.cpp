// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "invnet/common.hpp"
#include "invnet/tensor/checkpoint.hpp"
#include "invnet/tensor/gradcheck.hpp"
#include "invnet/tensor/kernels.hpp"
#include "invnet/tensor/tape.hpp"

using namespace invnet;
using namespace invnet::tensor;

namespace {

Array<double> random_array(Rng& rng, int r, int c, double scale = 1.0) {
  Array<double> a(r, c);
  for (auto& v : a.data) v = rng.uniform(-scale, scale);
  return a;
}

using Td = Tape<double>;

}  // namespace

TEST_CASE("linear plus bias reproduces small hand cases") {
  Td t;
  auto w = t.constant(Array<double>::row({1, 0, 0, 1}));  // not used; see below
  (void)w;

  Array<double> identity(2, 2);
  identity.at(0, 0) = 1;
  identity.at(1, 1) = 1;
  Td t1;
  auto x = t1.constant(Array<double>::row({1, 2}));
  auto y = t1.add_row_bias(t1.linear(t1.constant(identity), x),
                           t1.constant(Array<double>::row({0, 0})));
  CHECK(t1.val(y).data == std::vector<double>{1, 2});

  Array<double> flip(2, 2);
  flip.at(0, 0) = 1;
  flip.at(1, 1) = -1;
  Td t2;
  auto y2 = t2.linear(t2.constant(flip), t2.constant(Array<double>::row({3, 4})));
  CHECK(t2.val(y2).data == std::vector<double>{3, -4});
}

TEST_CASE("linear matches a naive double-loop oracle") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    int m = rng.range(1, 4), k = rng.range(1, 5), n = rng.range(1, 4);
    Array<double> X = random_array(rng, m, k);
    Array<double> W = random_array(rng, n, k);
    Td t;
    auto y = t.linear(t.constant(W), t.constant(X));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int l = 0; l < k; ++l) acc += X.at(i, l) * W.at(j, l);
        CHECK(t.val(y).at(i, j) == doctest::Approx(acc).epsilon(1e-12));
      }
  }
}

TEST_CASE("linear rejects mismatched inner dimensions") {
  Td t;
  auto w = t.constant(Array<double>(3, 4));
  auto x = t.constant(Array<double>(2, 5));
  CHECK_THROWS_AS(t.linear(w, x), ShapeError);
}

TEST_CASE("affine map is linear in its input") {
  Rng rng(2);
  Array<double> W = random_array(rng, 3, 4);
  Array<double> x = random_array(rng, 1, 4);
  Array<double> y = random_array(rng, 1, 4);
  double a = 0.7, b = -1.3;
  Array<double> combo(1, 4);
  for (int c = 0; c < 4; ++c) combo.at(0, c) = a * x.at(0, c) + b * y.at(0, c);
  Td t;
  auto wx = t.val(t.linear(t.constant(W), t.constant(x)));
  auto wy = t.val(t.linear(t.constant(W), t.constant(y)));
  auto wc = t.val(t.linear(t.constant(W), t.constant(combo)));
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs(wc.at(0, c) - (a * wx.at(0, c) + b * wy.at(0, c))) < 1e-12);
}

TEST_CASE("relu and tanh pointwise basics") {
  Td t;
  auto r = t.relu(t.constant(Array<double>::row({-1, 0, 2})));
  CHECK(t.val(r).data == std::vector<double>{0, 0, 2});
  auto th = t.tanh_(t.constant(Array<double>::row({0})));
  CHECK(t.val(th).data[0] == 0.0);

  Rng rng(3);
  Array<double> x = random_array(rng, 2, 5, 2.0);
  Array<double> nx = x;
  for (auto& v : nx.data) v = -v;
  Td t2;
  auto a = t2.val(t2.tanh_(t2.constant(x)));
  auto b = t2.val(t2.tanh_(t2.constant(nx)));
  for (size_t i = 0; i < a.size(); ++i) CHECK(a.data[i] == doctest::Approx(-b.data[i]));
}

TEST_CASE("segment reductions cover max, empty, and duplicate cases") {
  Array<double> rows(2, 2);
  rows.at(0, 0) = 1;
  rows.at(0, 1) = 2;
  rows.at(1, 0) = 3;
  rows.at(1, 1) = 0;

  Td t;
  auto x = t.constant(rows);
  auto mx = t.segment_reduce(x, Segments::from_lists({{0, 1}}), ReduceMode::max);
  CHECK(t.val(mx).data == std::vector<double>{3, 2});

  auto empty = t.segment_reduce(x, Segments::from_lists({{}}), ReduceMode::max);
  CHECK(t.val(empty).data == std::vector<double>{0, 0});

  // Duplicate entry: mean equals the row, gradient splits 1/2 + 1/2.
  Td t2;
  auto x2 = t2.constant(rows);
  auto dup = t2.segment_reduce(x2, Segments::from_lists({{1, 1}}), ReduceMode::mean);
  CHECK(t2.val(dup).data == std::vector<double>{3, 0});
  auto loss = t2.sum_all(dup);
  t2.backward(loss);
  CHECK(t2.grad(x2).at(1, 0) == doctest::Approx(1.0));
  CHECK(t2.grad(x2).at(0, 0) == 0.0);
}

TEST_CASE("red concatenates max and mean") {
  Array<double> rows(2, 2);
  rows.at(0, 0) = 1;
  rows.at(0, 1) = 2;
  rows.at(1, 0) = 3;
  rows.at(1, 1) = 0;
  Td t;
  auto x = t.constant(rows);
  CHECK(t.val(t.red(x, Segments::from_lists({{0, 1}}))).data ==
        std::vector<double>{3, 2, 2, 1});
  CHECK(t.val(t.red(x, Segments::from_lists({{}}))).data == std::vector<double>{0, 0, 0, 0});
  CHECK(t.val(t.red(x, Segments::from_lists({{0}}))).data == std::vector<double>{1, 2, 1, 2});
}

TEST_CASE("red_prime concatenates max+min and mean and is odd") {
  Array<double> rows(2, 2);
  rows.at(0, 0) = 1;
  rows.at(0, 1) = -2;
  rows.at(1, 0) = -3;
  rows.at(1, 1) = 4;
  Td t;
  auto x = t.constant(rows);
  CHECK(t.val(t.red_prime(x, Segments::from_lists({{0, 1}}))).data ==
        std::vector<double>{-2, 2, -1, 1});
  CHECK(t.val(t.red_prime(x, Segments::from_lists({{1}}))).data ==
        std::vector<double>{-6, 8, -3, 4});

  Rng rng(4);
  Array<double> v = random_array(rng, 5, 3);
  Array<double> nv = v;
  for (auto& e : nv.data) e = -e;
  Segments segs = Segments::from_lists({{0, 1, 2}, {3, 4}, {}});
  Td t2;
  auto pos = t2.val(t2.red_prime(t2.constant(v), segs));
  auto neg = t2.val(t2.red_prime(t2.constant(nv), segs));
  for (size_t i = 0; i < pos.size(); ++i) CHECK(pos.data[i] == -neg.data[i]);
}

TEST_CASE("backward computes hand-checkable gradients") {
  // loss = x^2 via MSE against zero.
  Td t;
  auto x = t.constant(Array<double>::row({3}));
  auto loss = t.mse_loss(x, {0});
  t.backward(loss);
  CHECK(t.grad(x).data[0] == doctest::Approx(6.0));

  Td t2;
  auto x2 = t2.constant(Array<double>::row({-1, 2}));
  auto loss2 = t2.sum_all(t2.relu(x2));
  t2.backward(loss2);
  CHECK(t2.grad(x2).data == std::vector<double>{0, 1});
}

TEST_CASE("mean reduction gradient sums to one per coordinate per segment") {
  Rng rng(5);
  Array<double> v = random_array(rng, 6, 3);
  Segments segs = Segments::from_lists({{0, 2, 4}, {1}, {3, 5, 5}});
  Td t;
  auto x = t.constant(v);
  auto loss = t.sum_all(t.segment_reduce(x, segs, ReduceMode::mean));
  t.backward(loss);
  // Total gradient mass per coordinate equals the number of nonempty segments.
  for (int c = 0; c < 3; ++c) {
    double mass = 0;
    for (int r = 0; r < 6; ++r) mass += t.grad(x).at(r, c);
    CHECK(mass == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("max gradient routes to the lowest gather index on ties") {
  Array<double> v(2, 1);
  v.at(0, 0) = 5;
  v.at(1, 0) = 5;
  Td t;
  auto x = t.constant(v);
  auto loss = t.sum_all(t.segment_reduce(x, Segments::from_lists({{1, 0}}), ReduceMode::max));
  t.backward(loss);
  CHECK(t.grad(x).at(1, 0) == 1.0);  // index 1 listed first in the gather
  CHECK(t.grad(x).at(0, 0) == 0.0);
  // An exact tie is not a finite-difference hazard; a near tie is.
  CHECK(std::isinf(t.min_kink_margin()));
  Array<double> close(2, 1);
  close.at(0, 0) = 5.0;
  close.at(1, 0) = 5.0 + 1e-6;
  Td t2;
  auto x2 = t2.constant(close);
  t2.segment_reduce(x2, Segments::from_lists({{0, 1}}), ReduceMode::max);
  CHECK(t2.min_kink_margin() == doctest::Approx(1e-6));
}

TEST_CASE("losses match closed forms") {
  Td t;
  auto p = t.constant(Array<double>::row({0.5}));
  CHECK(t.val(t.bce_loss(p, {1})).data[0] == doctest::Approx(std::log(2.0)));

  Array<double> logits(1, 4);  // all zero: uniform softmax
  Array<double> onehot(1, 4);
  onehot.at(0, 2) = 1;
  Td t2;
  CHECK(t2.val(t2.softmax_xent(t2.constant(logits), onehot)).data[0] ==
        doctest::Approx(std::log(4.0)));

  Td t3;
  auto q = t3.constant(Array<double>::row({0.5}));
  CHECK(t3.val(t3.mse_loss(q, {1.0})).data[0] == doctest::Approx(0.25));
}

TEST_CASE("non-finite values are rejected with the op name") {
  Td t;
  Array<double> bad = Array<double>::row({1.0, std::numeric_limits<double>::infinity()});
  CHECK_THROWS_AS(t.constant(bad), NumericError);
  try {
    Td t2;
    t2.constant(bad, "custom_input");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("custom_input") != std::string::npos);
  }
}

TEST_CASE("per-op gradients agree with central differences") {
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    ParamStore<double> store;
    store.add("w", random_array(rng, 3, 4));
    store.add("b", random_array(rng, 1, 3));
    store.add("x", random_array(rng, 5, 4));
    store.add("frozen", random_array(rng, 1, 2), false);
    Segments segs = Segments::from_lists({{0, 1, 4}, {2}, {}, {3, 3}});
    auto build = [&segs](Td& t, ParamStore<double>& s) {
      auto x = t.param(s, "x");
      auto h = t.add_row_bias(t.linear(t.param(s, "w"), x), t.param(s, "b"));
      auto r = t.relu(h);
      auto red1 = t.red(r, segs);
      auto rp = t.red_prime(t.tanh_(x), segs);
      auto c = t.concat_cols(red1, rp);
      auto g = t.gather_rows(c, {0, 3, 1, 0});
      auto sc = t.scale_rows(g, {1, -1, 1, -1});
      auto z = t.zero_row(sc, 2);
      auto sg = t.sigmoid(z);
      return t.bce_loss(sg, std::vector<double>(static_cast<size_t>(t.val(sg).rows) *
                                                    static_cast<size_t>(t.val(sg).cols),
                                                0.3));
    };
    GradcheckReport rep = gradcheck(store, build, 1e-6);
    if (!rep.clean()) continue;  // resample: too close to a kink
    CHECK(rep.max_rel_err <= 1e-5);
  }
}

TEST_CASE("gradcheck reports tiny error on smooth chains") {
  Rng rng(7);
  ParamStore<double> store;
  store.add("w1", random_array(rng, 4, 3));
  store.add("w2", random_array(rng, 2, 4));
  store.add("x", random_array(rng, 2, 3));
  auto build = [](Td& t, ParamStore<double>& s) {
    auto h = t.tanh_(t.linear(t.param(s, "w1"), t.param(s, "x")));
    auto o = t.tanh_(t.linear(t.param(s, "w2"), h));
    return t.mse_loss(o, std::vector<double>(4, 0.25));
  };
  GradcheckReport rep = gradcheck(store, build, 1e-6);
  CHECK(rep.max_rel_err <= 1e-7);

  ParamStore<double> affine;
  affine.add("w", random_array(rng, 3, 5));
  affine.add("b", random_array(rng, 1, 3));
  affine.add("x", random_array(rng, 4, 5));
  auto build2 = [](Td& t, ParamStore<double>& s) {
    auto y = t.add_row_bias(t.linear(t.param(s, "w"), t.param(s, "x")), t.param(s, "b"));
    return t.mse_loss(y, std::vector<double>(12, 0.1));
  };
  CHECK(gradcheck(affine, build2, 1e-6).max_rel_err <= 1e-7);
}

TEST_CASE("softmax cross-entropy is shift invariant") {
  Rng rng(8);
  Array<double> logits = random_array(rng, 3, 5);
  Array<double> target(3, 5);
  for (int r = 0; r < 3; ++r) {
    double z = 0;
    for (int c = 0; c < 5; ++c) {
      target.at(r, c) = rng.uniform(0.1, 1.0);
      z += target.at(r, c);
    }
    for (int c = 0; c < 5; ++c) target.at(r, c) /= z;
  }
  Array<double> shifted = logits;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) shifted.at(r, c) += 7.25;
  Td t;
  double a = t.val(t.softmax_xent(t.constant(logits), target)).data[0];
  double b = t.val(t.softmax_xent(t.constant(shifted), target)).data[0];
  CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("serial and OpenMP kernels produce bit-identical results") {
  Rng rng(9);
  Backend saved = active_backend();
  Array<double> x = random_array(rng, 17, 13);
  Array<double> w = random_array(rng, 11, 13);
  Array<double> bias = random_array(rng, 1, 13);
  std::vector<int32_t> idx;
  for (int i = 0; i < 29; ++i) idx.push_back(static_cast<int32_t>(rng.below(17)));
  Segments segs;
  {
    std::vector<std::vector<int32_t>> lists(7);
    for (int i = 0; i < 40; ++i)
      lists[rng.below(7)].push_back(static_cast<int32_t>(rng.below(17)));
    segs = Segments::from_lists(lists);
  }
  std::vector<double> factors;
  for (int i = 0; i < 17; ++i) factors.push_back(rng.chance(0.5) ? 1.0 : -1.0);

  auto run_all = [&]() {
    Td t;
    auto xi = t.constant(x);
    auto wi = t.constant(w);
    auto lin = t.linear(wi, xi);
    auto b = t.add_row_bias(xi, t.constant(bias));
    auto r = t.relu(xi);
    auto th = t.tanh_(xi);
    auto sg = t.sigmoid(xi);
    auto ga = t.gather_rows(xi, idx);
    auto sc = t.scale_rows(xi, factors);
    auto mx = t.segment_reduce(xi, segs, ReduceMode::max);
    auto mn = t.segment_reduce(xi, segs, ReduceMode::min);
    auto me = t.segment_reduce(xi, segs, ReduceMode::mean);
    std::vector<std::vector<double>> outs;
    for (auto id : {lin, b, r, th, sg, ga, sc, mx, mn, me}) outs.push_back(t.val(id).data);
    // Exercise the accumulate kernels through backward as well.
    auto loss = t.sum_all(lin);
    t.backward(loss);
    outs.push_back(t.grad(xi).data);
    outs.push_back(t.grad(wi).data);
    return outs;
  };

  active_backend() = Backend::serial;
  auto serial_out = run_all();
  active_backend() = Backend::openmp;
  auto omp_out = run_all();
  active_backend() = saved;
  REQUIRE(serial_out.size() == omp_out.size());
  for (size_t i = 0; i < serial_out.size(); ++i) CHECK(serial_out[i] == omp_out[i]);
}

TEST_CASE("adam drives a quadratic toward its minimum") {
  ParamStore<double> store;
  store.add("theta", Array<double>::row({5.0, -3.0}));
  AdamConfig cfg;
  cfg.lr = 0.05;
  for (int step = 0; step < 400; ++step) {
    Td t;
    auto th = t.param(store, "theta");
    auto loss = t.mse_loss(th, {1.0, 2.0});
    t.backward(loss);
    store.adam_step(t.param_grads(), cfg);
  }
  CHECK(store.value("theta").data[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(store.value("theta").data[1] == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(store.step_count() == 400);
}

TEST_CASE("frozen parameters never move") {
  ParamStore<double> store;
  store.add("live", Array<double>::row({1.0}));
  store.add("ice", Array<double>::row({1.0}), false);
  for (int step = 0; step < 10; ++step) {
    Td t;
    auto a = t.param(store, "live");
    auto b = t.param(store, "ice");
    auto loss = t.mse_loss(t.concat_cols(a, b), {0.0, 0.0});
    t.backward(loss);
    auto grads = t.param_grads();
    CHECK(!grads.count("ice"));
    store.adam_step(grads, {});
  }
  CHECK(store.value("ice").data[0] == 1.0);
  CHECK(store.value("live").data[0] < 1.0);
}

TEST_CASE("checkpoints round-trip values and trainability") {
  Rng rng(10);
  ParamStore<double> store;
  store.add("a", random_array(rng, 2, 3));
  store.add("b", random_array(rng, 1, 4), false);
  nlohmann::json doc = save_params(store);

  ParamStore<double> other;
  other.add("a", Array<double>(2, 3));
  other.add("b", Array<double>(1, 4));
  load_params(doc, other);
  CHECK(other.value("a").data == store.value("a").data);
  CHECK(other.value("b").data == store.value("b").data);
  CHECK(!other.entry("b").trainable);

  ParamStore<double> wrong;
  wrong.add("a", Array<double>(3, 2));
  wrong.add("b", Array<double>(1, 4));
  CHECK_THROWS_AS(load_params(doc, wrong), ConfigError);
}
