// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Straight-line reference evaluation of the embedding network, written
// directly from the update rules with plain loops over the raw edge
// lists. Deliberately shares no gather/index/kernel code with the library
// so the two implementations can check each other.

#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "invnet/gnn/model.hpp"

namespace gnn_oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat to_mat(const invnet::tensor::Array<double>& a) {
  Mat m(static_cast<size_t>(a.rows), Vec(static_cast<size_t>(a.cols)));
  for (int r = 0; r < a.rows; ++r)
    for (int c = 0; c < a.cols; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = a.at(r, c);
  return m;
}

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec y(m.size(), 0.0);
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
  return y;
}

inline Vec vadd(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec vscale(Vec a, double f) {
  for (auto& v : a) v *= f;
  return a;
}

inline Vec vrelu(Vec a) {
  for (auto& v : a) v = std::max(v, 0.0);
  return a;
}

inline Vec vtanh(Vec a) {
  for (auto& v : a) v = std::tanh(v);
  return a;
}

inline Vec vconcat(const Vec& a, const Vec& b) {
  Vec y = a;
  y.insert(y.end(), b.begin(), b.end());
  return y;
}

// concat(max, mean); empty input gives zeros(2n).
inline Vec reduce(const std::vector<Vec>& items, size_t n) {
  if (items.empty()) return Vec(2 * n, 0.0);
  Vec mx(n, -std::numeric_limits<double>::infinity()), mean(n, 0.0);
  for (const Vec& v : items)
    for (size_t i = 0; i < n; ++i) {
      mx[i] = std::max(mx[i], v[i]);
      mean[i] += v[i];
    }
  for (auto& v : mean) v /= static_cast<double>(items.size());
  return vconcat(mx, mean);
}

// concat(max + min, mean); odd in its inputs.
inline Vec reduce_prime(const std::vector<Vec>& items, size_t n) {
  if (items.empty()) return Vec(2 * n, 0.0);
  Vec mx(n, -std::numeric_limits<double>::infinity());
  Vec mn(n, std::numeric_limits<double>::infinity());
  Vec mean(n, 0.0);
  for (const Vec& v : items)
    for (size_t i = 0; i < n; ++i) {
      mx[i] = std::max(mx[i], v[i]);
      mn[i] = std::min(mn[i], v[i]);
      mean[i] += v[i];
    }
  Vec head(n);
  for (size_t i = 0; i < n; ++i) head[i] = mx[i] + mn[i];
  for (auto& v : mean) v /= static_cast<double>(items.size());
  return vconcat(head, mean);
}

struct State {
  Mat c, s, t;
};

inline State oracle_forward(const invnet::graph::Hypergraph& g,
                            invnet::tensor::ParamStore<double>& p,
                            const invnet::gnn::Dims& dims,
                            const invnet::graph::NodeTypeConfig& cfg = {}) {
  using invnet::graph::StEdge;
  auto row = [&p](const std::string& name) { return to_mat(p.value(name))[0]; };
  auto mat = [&p](const std::string& name) { return to_mat(p.value(name)); };

  State st;
  for (const auto& tag : g.clause_type) st.c.push_back(row("init.c." + tag));
  for (const auto& tag : g.symbol_type) st.s.push_back(row("init.s." + tag));
  for (const auto& tag : g.term_type) st.t.push_back(row("init.t." + tag));
  if (!st.t.empty()) st.t[0] = Vec(st.t[0].size(), 0.0);

  for (int layer = 0; layer < dims.L; ++layer) {
    const std::string l = "L" + std::to_string(layer) + ".";
    size_t dt0 = st.t.empty() ? 0 : st.t[0].size();
    size_t ds1 = static_cast<size_t>(dims.d_s[static_cast<size_t>(layer) + 1]);
    size_t dt1 = static_cast<size_t>(dims.d_t[static_cast<size_t>(layer) + 1]);
    size_t dc0 = static_cast<size_t>(dims.d_c[static_cast<size_t>(layer)]);

    State next;

    for (size_t j = 0; j < st.c.size(); ++j) {
      std::vector<Vec> terms;
      for (const auto& e : g.ct_edges)
        if (e.clause == static_cast<int32_t>(j)) terms.push_back(st.t[static_cast<size_t>(e.term)]);
      Vec u = vadd(vadd(matvec(mat(l + "M_c"), st.c[j]),
                        matvec(mat(l + "M_ct"), reduce(terms, dt0))),
                   row(l + "B_c"));
      next.c.push_back(vrelu(u));
    }

    // Per-edge symbol messages; the sign multiplies the whole vector.
    std::vector<Vec> xs;
    for (const StEdge& e : g.st_edges) {
      Vec x = vadd(vadd(vadd(matvec(mat(l + "M_ts.1"), st.t[static_cast<size_t>(e.parent)]),
                             matvec(mat(l + "M_ts.2"), st.t[static_cast<size_t>(e.child1)])),
                        matvec(mat(l + "M_ts.3"), st.t[static_cast<size_t>(e.child2)])),
                   row(l + "B_ts"));
      xs.push_back(x);
    }
    for (size_t j = 0; j < st.s.size(); ++j) {
      std::vector<Vec> gx;
      for (size_t e = 0; e < g.st_edges.size(); ++e)
        if (g.st_edges[e].symbol == static_cast<int32_t>(j))
          gx.push_back(vscale(xs[e], static_cast<double>(g.st_edges[e].sign)));
      Vec u = vadd(matvec(mat(l + "M_s"), st.s[j]),
                   matvec(mat(l + "M_ts"), reduce_prime(gx, ds1)));
      next.s.push_back(vtanh(u));
    }

    for (size_t j = 0; j < st.t.size(); ++j) {
      std::vector<Vec> clauses;
      for (const auto& e : g.ct_edges)
        if (e.term == static_cast<int32_t>(j)) clauses.push_back(st.c[static_cast<size_t>(e.clause)]);
      Vec u = vadd(matvec(mat(l + "M_t"), st.t[j]),
                   matvec(mat(l + "M_tc"), reduce(clauses, dc0)));
      for (int d = 1; d <= 3; ++d) {
        const std::string sd = std::to_string(d);
        std::vector<Vec> ys;
        for (const StEdge& e : g.st_edges) {
          // Receiver and the two term operands per family.
          int32_t recv = d == 1 ? e.parent : d == 2 ? e.child1 : e.child2;
          int32_t ta = d == 1 ? e.child1 : e.parent;
          int32_t tb = d == 3 ? e.child1 : e.child2;
          if (recv != static_cast<int32_t>(j)) continue;
          if (d != 1 && recv == invnet::graph::Hypergraph::kT0) continue;
          Vec y = vadd(vadd(vadd(matvec(mat(l + "M_st.1." + sd), st.t[static_cast<size_t>(ta)]),
                                 matvec(mat(l + "M_st.2." + sd), st.t[static_cast<size_t>(tb)])),
                            vscale(matvec(mat(l + "M_st.3." + sd),
                                          st.s[static_cast<size_t>(e.symbol)]),
                                   static_cast<double>(e.sign))),
                       row(l + "B_st"));
          ys.push_back(vrelu(y));
        }
        u = vadd(std::move(u), matvec(mat(l + "M_st." + sd), reduce(ys, dt1)));
      }
      u = vadd(std::move(u), row(l + "B_t"));
      next.t.push_back(vrelu(u));
    }
    if (!next.t.empty()) next.t[0] = Vec(next.t[0].size(), 0.0);

    st = std::move(next);
  }
  return st;
}

}  // namespace gnn_oracle
