// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/gnn/model.hpp"

namespace invnet::gnn {

Dims Dims::make(int layers, int c0, int s0, int t0, int c_hidden, int s_hidden,
                int t_hidden) {
  Dims d;
  d.L = layers;
  d.d_c.assign(static_cast<size_t>(layers) + 1, c_hidden);
  d.d_s.assign(static_cast<size_t>(layers) + 1, s_hidden);
  d.d_t.assign(static_cast<size_t>(layers) + 1, t_hidden);
  d.d_c[0] = c0;
  d.d_s[0] = s0;
  d.d_t[0] = t0;
  d.validate();
  return d;
}

Dims Dims::defaults() { return make(5, 4, 1, 4, 32, 64, 32); }

void Dims::validate() const {
  if (L < 0) throw ConfigError("layer count must be nonnegative");
  size_t want = static_cast<size_t>(L) + 1;
  if (d_c.size() != want || d_s.size() != want || d_t.size() != want)
    throw ConfigError("dimension lists must have one entry per layer boundary");
  for (const auto* v : {&d_c, &d_s, &d_t})
    for (int d : *v)
      if (d <= 0) throw ConfigError("all widths must be positive");
}

std::vector<ParamSpec> describe(const Dims& dims, const graph::NodeTypeConfig& cfg) {
  dims.validate();
  std::vector<ParamSpec> specs;
  auto add = [&specs](std::string name, int rows, int cols, ParamKind kind,
                      bool trainable = true) {
    specs.push_back({std::move(name), rows, cols, trainable, kind});
  };

  for (const auto& tag : cfg.clause_tags())
    add("init.c." + tag, 1, dims.d_c[0], ParamKind::type_vector);
  for (const auto& tag : cfg.symbol_tags())
    add("init.s." + tag, 1, dims.d_s[0], ParamKind::type_vector, !cfg.sign_symmetric(tag));
  for (const auto& tag : cfg.term_tags())
    add("init.t." + tag, 1, dims.d_t[0], ParamKind::type_vector, tag != cfg.t0_tag);

  for (int i = 0; i < dims.L; ++i) {
    const std::string l = "L" + std::to_string(i) + ".";
    const int dc0 = dims.d_c[static_cast<size_t>(i)], dc1 = dims.d_c[static_cast<size_t>(i) + 1];
    const int ds0 = dims.d_s[static_cast<size_t>(i)], ds1 = dims.d_s[static_cast<size_t>(i) + 1];
    const int dt0 = dims.d_t[static_cast<size_t>(i)], dt1 = dims.d_t[static_cast<size_t>(i) + 1];

    add(l + "B_c", 1, dc1, ParamKind::bias);
    add(l + "M_c", dc1, dc0, ParamKind::matrix);
    add(l + "M_ct", dc1, 2 * dt0, ParamKind::matrix);

    add(l + "B_ts", 1, ds1, ParamKind::bias);
    for (int j = 1; j <= 3; ++j)
      add(l + "M_ts." + std::to_string(j), ds1, dt0, ParamKind::matrix);
    add(l + "M_ts", ds1, 2 * ds1, ParamKind::matrix);
    add(l + "M_s", ds1, ds0, ParamKind::matrix);

    add(l + "B_st", 1, dt1, ParamKind::bias);
    for (int d = 1; d <= 3; ++d) {
      const std::string sd = std::to_string(d);
      add(l + "M_st.1." + sd, dt1, dt0, ParamKind::matrix);
      add(l + "M_st.2." + sd, dt1, dt0, ParamKind::matrix);
      // The third factor multiplies a symbol row, so its width follows d_s.
      add(l + "M_st.3." + sd, dt1, ds0, ParamKind::matrix);
      add(l + "M_st." + sd, dt1, 2 * dt1, ParamKind::matrix);
    }
    add(l + "B_t", 1, dt1, ParamKind::bias);
    add(l + "M_t", dt1, dt0, ParamKind::matrix);
    add(l + "M_tc", dt1, 2 * dc0, ParamKind::matrix);
  }
  return specs;
}

namespace {

FlatFamily flatten_family(const std::vector<std::vector<graph::GatherTuple>>& fam) {
  FlatFamily out;
  out.segs.offsets.clear();
  out.segs.offsets.push_back(0);
  int32_t next = 0;
  for (const auto& tuples : fam) {
    for (const auto& tup : tuples) {
      out.a.push_back(tup.a);
      out.b.push_back(tup.b);
      out.c.push_back(tup.c);
      out.g.push_back(tup.g);
      out.segs.indices.push_back(next++);
    }
    out.segs.offsets.push_back(next);
  }
  return out;
}

}  // namespace

FlatIndex flatten_index(const graph::FIndex& idx) {
  FlatIndex out;
  out.ct = tensor::Segments::from_lists(idx.f_ct);
  out.tc = tensor::Segments::from_lists(idx.f_tc);
  out.st = flatten_family(idx.f_st);
  out.ts1 = flatten_family(idx.f_ts1);
  out.ts2 = flatten_family(idx.f_ts2);
  out.ts3 = flatten_family(idx.f_ts3);
  return out;
}

}  // namespace invnet::gnn
