// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

// Numerical inner loops in two interchangeable flavors: a plain serial
// reference and an OpenMP version parallelized only across independent
// outputs, so both produce bit-identical results (each output element is
// always summed in the same left-to-right order). Scatter-style accumulation
// (gather/reduce backward) stays serial in both flavors.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "invnet/tensor/array.hpp"

namespace invnet::tensor {

enum class Backend { serial, openmp };

inline Backend& active_backend() {
#ifdef _OPENMP
  static Backend b = Backend::openmp;
#else
  static Backend b = Backend::serial;
#endif
  return b;
}

inline bool openmp_compiled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

enum class ReduceMode { max, min, mean };

namespace kernels {

// --- serial reference --------------------------------------------------

namespace serial {

// y[m,n] = x[m,k] * w[n,k]^T
template <class Real>
void matmul_nt(const Real* x, int m, int k, const Real* w, int n, Real* y) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Real acc = 0;
      const Real* xi = x + static_cast<size_t>(i) * k;
      const Real* wj = w + static_cast<size_t>(j) * k;
      for (int l = 0; l < k; ++l) acc += xi[l] * wj[l];
      y[static_cast<size_t>(i) * n + j] = acc;
    }
}

// dx[m,k] += dy[m,n] * w[n,k]
template <class Real>
void matmul_acc_dx(const Real* dy, int m, int n, const Real* w, int k, Real* dx) {
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < k; ++l) {
      Real acc = 0;
      for (int j = 0; j < n; ++j)
        acc += dy[static_cast<size_t>(i) * n + j] * w[static_cast<size_t>(j) * k + l];
      dx[static_cast<size_t>(i) * k + l] += acc;
    }
}

// dw[n,k] += dy[m,n]^T * x[m,k]
template <class Real>
void matmul_acc_dw(const Real* dy, int m, int n, const Real* x, int k, Real* dw) {
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < k; ++l) {
      Real acc = 0;
      for (int i = 0; i < m; ++i)
        acc += dy[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(i) * k + l];
      dw[static_cast<size_t>(j) * k + l] += acc;
    }
}

template <class Real>
void relu(const Real* x, size_t n, Real* y) {
  for (size_t i = 0; i < n; ++i) y[i] = x[i] > Real(0) ? x[i] : Real(0);
}

template <class Real>
void tanh_(const Real* x, size_t n, Real* y) {
  for (size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

template <class Real>
void sigmoid(const Real* x, size_t n, Real* y) {
  for (size_t i = 0; i < n; ++i) y[i] = Real(1) / (Real(1) + std::exp(-x[i]));
}

template <class Real>
void gather_rows(const Real* x, int cols, const int32_t* idx, int m_out, Real* y) {
  for (int r = 0; r < m_out; ++r) {
    const Real* src = x + static_cast<size_t>(idx[r]) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    std::copy(src, src + cols, dst);
  }
}

template <class Real>
void scale_rows(const Real* x, int m, int cols, const Real* factor, Real* y) {
  for (int r = 0; r < m; ++r) {
    const Real f = factor[r];
    const Real* src = x + static_cast<size_t>(r) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) dst[c] = f * src[c];
  }
}

template <class Real>
void add_row_bias(const Real* x, int m, int cols, const Real* b, Real* y) {
  for (int r = 0; r < m; ++r) {
    const Real* src = x + static_cast<size_t>(r) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) dst[c] = src[c] + b[c];
  }
}

// Empty segments produce zero rows, per the empty-reduction convention.
template <class Real>
void segment_reduce(const Real* x, int cols, const int32_t* offsets, int n_seg,
                    const int32_t* indices, ReduceMode mode, Real* y) {
  for (int s = 0; s < n_seg; ++s) {
    Real* out = y + static_cast<size_t>(s) * cols;
    int b = offsets[s], e = offsets[s + 1];
    if (b == e) {
      std::fill(out, out + cols, Real(0));
      continue;
    }
    if (mode == ReduceMode::mean) {
      std::fill(out, out + cols, Real(0));
      for (int i = b; i < e; ++i) {
        const Real* row = x + static_cast<size_t>(indices[i]) * cols;
        for (int c = 0; c < cols; ++c) out[c] += row[c];
      }
      const Real inv = Real(1) / Real(e - b);
      for (int c = 0; c < cols; ++c) out[c] *= inv;
    } else {
      const Real* first = x + static_cast<size_t>(indices[b]) * cols;
      std::copy(first, first + cols, out);
      for (int i = b + 1; i < e; ++i) {
        const Real* row = x + static_cast<size_t>(indices[i]) * cols;
        if (mode == ReduceMode::max)
          for (int c = 0; c < cols; ++c) out[c] = std::max(out[c], row[c]);
        else
          for (int c = 0; c < cols; ++c) out[c] = std::min(out[c], row[c]);
      }
    }
  }
}

}  // namespace serial

// --- OpenMP flavor -------------------------------------------------------

namespace par {

template <class Real>
void matmul_nt(const Real* x, int m, int k, const Real* w, int n, Real* y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Real acc = 0;
      const Real* xi = x + static_cast<size_t>(i) * k;
      const Real* wj = w + static_cast<size_t>(j) * k;
      for (int l = 0; l < k; ++l) acc += xi[l] * wj[l];
      y[static_cast<size_t>(i) * n + j] = acc;
    }
}

template <class Real>
void matmul_acc_dx(const Real* dy, int m, int n, const Real* w, int k, Real* dx) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < k; ++l) {
      Real acc = 0;
      for (int j = 0; j < n; ++j)
        acc += dy[static_cast<size_t>(i) * n + j] * w[static_cast<size_t>(j) * k + l];
      dx[static_cast<size_t>(i) * k + l] += acc;
    }
}

template <class Real>
void matmul_acc_dw(const Real* dy, int m, int n, const Real* x, int k, Real* dw) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < k; ++l) {
      Real acc = 0;
      for (int i = 0; i < m; ++i)
        acc += dy[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(i) * k + l];
      dw[static_cast<size_t>(j) * k + l] += acc;
    }
}

template <class Real>
void relu(const Real* x, size_t n, Real* y) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i)
    y[i] = x[i] > Real(0) ? x[i] : Real(0);
}

template <class Real>
void tanh_(const Real* x, size_t n, Real* y) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) y[i] = std::tanh(x[i]);
}

template <class Real>
void sigmoid(const Real* x, size_t n, Real* y) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i)
    y[i] = Real(1) / (Real(1) + std::exp(-x[i]));
}

template <class Real>
void gather_rows(const Real* x, int cols, const int32_t* idx, int m_out, Real* y) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < m_out; ++r) {
    const Real* src = x + static_cast<size_t>(idx[r]) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    std::copy(src, src + cols, dst);
  }
}

template <class Real>
void scale_rows(const Real* x, int m, int cols, const Real* factor, Real* y) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < m; ++r) {
    const Real f = factor[r];
    const Real* src = x + static_cast<size_t>(r) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) dst[c] = f * src[c];
  }
}

template <class Real>
void add_row_bias(const Real* x, int m, int cols, const Real* b, Real* y) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < m; ++r) {
    const Real* src = x + static_cast<size_t>(r) * cols;
    Real* dst = y + static_cast<size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) dst[c] = src[c] + b[c];
  }
}

template <class Real>
void segment_reduce(const Real* x, int cols, const int32_t* offsets, int n_seg,
                    const int32_t* indices, ReduceMode mode, Real* y) {
#pragma omp parallel for schedule(static)
  for (int s = 0; s < n_seg; ++s)
    serial::segment_reduce(x, cols, offsets + s, 1, indices, mode,
                           y + static_cast<size_t>(s) * cols);
}

}  // namespace par

// --- dispatch ------------------------------------------------------------

template <class Real>
void matmul_nt(const Real* x, int m, int k, const Real* w, int n, Real* y) {
  if (active_backend() == Backend::openmp)
    par::matmul_nt(x, m, k, w, n, y);
  else
    serial::matmul_nt(x, m, k, w, n, y);
}

template <class Real>
void matmul_acc_dx(const Real* dy, int m, int n, const Real* w, int k, Real* dx) {
  if (active_backend() == Backend::openmp)
    par::matmul_acc_dx(dy, m, n, w, k, dx);
  else
    serial::matmul_acc_dx(dy, m, n, w, k, dx);
}

template <class Real>
void matmul_acc_dw(const Real* dy, int m, int n, const Real* x, int k, Real* dw) {
  if (active_backend() == Backend::openmp)
    par::matmul_acc_dw(dy, m, n, x, k, dw);
  else
    serial::matmul_acc_dw(dy, m, n, x, k, dw);
}

template <class Real>
void relu(const Real* x, size_t n, Real* y) {
  if (active_backend() == Backend::openmp)
    par::relu(x, n, y);
  else
    serial::relu(x, n, y);
}

template <class Real>
void tanh_(const Real* x, size_t n, Real* y) {
  if (active_backend() == Backend::openmp)
    par::tanh_(x, n, y);
  else
    serial::tanh_(x, n, y);
}

template <class Real>
void sigmoid(const Real* x, size_t n, Real* y) {
  if (active_backend() == Backend::openmp)
    par::sigmoid(x, n, y);
  else
    serial::sigmoid(x, n, y);
}

template <class Real>
void gather_rows(const Real* x, int cols, const int32_t* idx, int m_out, Real* y) {
  if (active_backend() == Backend::openmp)
    par::gather_rows(x, cols, idx, m_out, y);
  else
    serial::gather_rows(x, cols, idx, m_out, y);
}

template <class Real>
void scale_rows(const Real* x, int m, int cols, const Real* factor, Real* y) {
  if (active_backend() == Backend::openmp)
    par::scale_rows(x, m, cols, factor, y);
  else
    serial::scale_rows(x, m, cols, factor, y);
}

template <class Real>
void add_row_bias(const Real* x, int m, int cols, const Real* b, Real* y) {
  if (active_backend() == Backend::openmp)
    par::add_row_bias(x, m, cols, b, y);
  else
    serial::add_row_bias(x, m, cols, b, y);
}

template <class Real>
void segment_reduce(const Real* x, int cols, const int32_t* offsets, int n_seg,
                    const int32_t* indices, ReduceMode mode, Real* y) {
  if (active_backend() == Backend::openmp)
    par::segment_reduce(x, cols, offsets, n_seg, indices, mode, y);
  else
    serial::segment_reduce(x, cols, offsets, n_seg, indices, mode, y);
}

}  // namespace kernels
}  // namespace invnet::tensor
