// Copyright (c) the dctfilter project authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dctfilter {

// Dense square matrix of doubles, row-major: entry (i, j) is row i, column j.
// Carries pixel blocks, DCT coefficient blocks and every compiled operator.
class BlockMatrix {
 public:
  explicit BlockMatrix(int n) : n_(checked_side(n)), data_(size_t(n) * n, 0.0) {}

  BlockMatrix(int n, std::vector<double> entries)
      : n_(checked_side(n)), data_(std::move(entries)) {
    if (data_.size() != size_t(n) * n) {
      throw std::invalid_argument("BlockMatrix: entry count must be n*n");
    }
  }

  static BlockMatrix identity(int n) {
    BlockMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int n() const { return n_; }
  double& operator()(int i, int j) { return data_[size_t(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[size_t(i) * n_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  static int checked_side(int n) {
    if (n < 1) throw std::invalid_argument("BlockMatrix: side must be >= 1");
    return n;
  }

  int n_;
  std::vector<double> data_;
};

inline void check_same_side(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("BlockMatrix: dimension mismatch");
  }
}

inline BlockMatrix matmul(const BlockMatrix& a, const BlockMatrix& b) {
  check_same_side(a, b);
  const int n = a.n();
  BlockMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;  // operator matrices are mostly zeros
      for (int j = 0; j < n; ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

inline BlockMatrix transpose(const BlockMatrix& a) {
  const int n = a.n();
  BlockMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(j, i) = a(i, j);
    }
  }
  return out;
}

inline BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b) {
  check_same_side(a, b);
  BlockMatrix out = a;
  for (size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] += b.data()[i];
  }
  return out;
}

// Max over entries of |a - b|; zero iff the matrices are equal.
inline double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b) {
  check_same_side(a, b);
  double m = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

}  // namespace dctfilter
