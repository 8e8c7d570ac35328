// Copyright 2026 The dworkbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense square matrices over a commutative ring and the division-free
// (Berkowitz) characteristic polynomial, truncated to its leading terms.
//
// E needs +, -, * and a free function dot(const E*, const E*, n, stride)
// found by ADL or the generic fallback below.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dworkbench/parallel.hpp"

namespace dworkbench {

template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, const E& fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  E& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const E* row(std::size_t i) const { return &data_[i * n_]; }

  template <class F>
  Matrix map(F&& f) const {
    Matrix out = *this;
    parallel_for(0, data_.size(), [&](std::size_t k) { out.data_[k] = f(data_[k]); });
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<E> data_;
};

namespace detail {

template <class E>
E generic_dot(const E* x, const E* y, std::size_t n, std::size_t stride) {
  E s = x[0] * y[0];
  for (std::size_t k = 1; k < n; ++k) s = s + x[k] * y[k * stride];
  return s;
}

template <class E>
auto dot_dispatch(const E* x, const E* y, std::size_t n, std::size_t stride, int) -> decltype(dot(x, y, n, stride)) {
  return dot(x, y, n, stride);
}

template <class E>
E dot_dispatch(const E* x, const E* y, std::size_t n, std::size_t stride, long) {
  return generic_dot(x, y, n, stride);
}

}  // namespace detail

template <class E>
E dot_product(const E* x, const E* y, std::size_t n, std::size_t stride = 1) {
  if (n == 0) throw std::invalid_argument("dot_product: empty");
  return detail::dot_dispatch(x, y, n, stride, 0);
}

template <class E>
Matrix<E> operator*(const Matrix<E>& a, const Matrix<E>& b) {
  if (a.size() != b.size() || a.size() == 0) throw std::invalid_argument("matrix product: size mismatch");
  const std::size_t n = a.size();
  Matrix<E> out(n, a(0, 0));
  parallel_for(0, n * n, [&](std::size_t k) {
    const std::size_t i = k / n, j = k % n;
    out(i, j) = dot_product(a.row(i), &b(0, j), n, n);
  });
  return out;
}

/// First `count` coefficients of det(I - T A): c_0 = 1 and c_n = (-1)^n times
/// the sum of the n x n principal minors. `one` and `zero` fix the ring.
///
/// Berkowitz: with A_{r+1} = [[A_r, C], [R, a]], the reversed characteristic
/// polynomial of A_{r+1} is the Toeplitz product of (1, -a, -R C, -R A_r C,
/// -R A_r^2 C, ...) with that of A_r. Only the first `count` entries of each
/// vector are kept, so step r costs about (count - 2) r^2 multiplications.
template <class E>
std::vector<E> truncated_charpoly(const Matrix<E>& a, std::size_t count, const E& zero, const E& one) {
  if (count == 0) return {};
  const std::size_t n = a.size();
  std::vector<E> poly{one};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column for the step adding row/column r.
    std::vector<E> t{one};
    if (count > 1) t.push_back(zero - a(r, r));
    std::vector<E> v(r, zero), next(r, zero);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t j = 2; j < count && r > 0; ++j) {
      t.push_back(zero - dot_product(a.row(r), v.data(), r));
      if (j + 1 < count) {
        parallel_for(0, r, [&](std::size_t i) { next[i] = dot_product(a.row(i), v.data(), r); });
        std::swap(v, next);
      }
    }
    while (t.size() < count) t.push_back(zero);
    std::vector<E> updated;
    const std::size_t len = std::min(count, poly.size() + 1);
    for (std::size_t k = 0; k < len; ++k) {
      E s = zero;
      for (std::size_t j = 0; j <= k; ++j) {
        if (k - j < poly.size()) s = s + t[j] * poly[k - j];
      }
      updated.push_back(s);
    }
    poly = std::move(updated);
  }
  while (poly.size() < count) poly.push_back(zero);
  return poly;
}

}  // namespace dworkbench
