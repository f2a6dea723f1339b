// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "invnet/common.hpp"

namespace invnet::tensor {

/// Dense row-major matrix. Vectors are 1 x n rows; biases are stored the same
/// way. No broadcasting beyond what the tape ops define.
template <class Real>
struct Array {
  int rows = 0;
  int cols = 0;
  std::vector<Real> data;

  Array() = default;
  Array(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

  static Array row(std::initializer_list<Real> xs) {
    Array a(1, static_cast<int>(xs.size()));
    int i = 0;
    for (Real x : xs) a.data[static_cast<size_t>(i++)] = x;
    return a;
  }

  size_t size() const { return data.size(); }
  Real* ptr() { return data.data(); }
  const Real* ptr() const { return data.data(); }

  Real& at(int r, int c) { return data[static_cast<size_t>(r) * cols + static_cast<size_t>(c)]; }
  const Real& at(int r, int c) const {
    return data[static_cast<size_t>(r) * cols + static_cast<size_t>(c)];
  }

  bool same_shape(const Array& o) const { return rows == o.rows && cols == o.cols; }

  bool all_finite() const {
    for (Real v : data)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  std::string shape_str() const {
    return "(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
  }

  template <class Other>
  Array<Other> cast() const {
    Array<Other> out(rows, cols);
    for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<Other>(data[i]);
    return out;
  }
};

/// Gather lists in CSR form: segment j covers indices[offsets[j]..offsets[j+1]).
struct Segments {
  std::vector<int32_t> offsets{0};
  std::vector<int32_t> indices;

  static Segments from_lists(const std::vector<std::vector<int32_t>>& lists) {
    Segments s;
    for (const auto& l : lists) {
      s.indices.insert(s.indices.end(), l.begin(), l.end());
      s.offsets.push_back(static_cast<int32_t>(s.indices.size()));
    }
    return s;
  }

  int count() const { return static_cast<int>(offsets.size()) - 1; }
  int begin(int j) const { return offsets[static_cast<size_t>(j)]; }
  int end(int j) const { return offsets[static_cast<size_t>(j) + 1]; }
};

}  // namespace invnet::tensor
