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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dctfilter/block_matrix.hpp"

namespace dctfilter {

// Orthonormal DCT-II basis for n x n blocks.
//
// c[u][x] = alpha(u) * cos((2x+1) u pi / (2n)) with alpha(0) = sqrt(1/n) and
// alpha(u>0) = sqrt(2/n), so the inverse of c is its transpose. Row 0 is the
// constant DC row. The basis is computed once and cached; with small n a
// dense sandwich product is all the transform work there is.
class DctBasis {
 public:
  explicit DctBasis(int n) : c_(build(n)), ct_(transpose(c_)) {}

  int n() const { return c_.n(); }
  const BlockMatrix& c() const { return c_; }
  const BlockMatrix& ct() const { return ct_; }

 private:
  static BlockMatrix build(int n) {
    if (n < 2) throw std::invalid_argument("DctBasis: side must be >= 2");
    BlockMatrix c(n);
    const double a0 = std::sqrt(1.0 / n);
    const double au = std::sqrt(2.0 / n);
    for (int u = 0; u < n; ++u) {
      for (int x = 0; x < n; ++x) {
        const double angle = (2 * x + 1) * u * std::numbers::pi / (2.0 * n);
        c(u, x) = (u == 0 ? a0 : au) * std::cos(angle);
      }
    }
    return c;
  }

  BlockMatrix c_;
  BlockMatrix ct_;
};

// 2-D forward transform: C * block * C^t.
inline BlockMatrix forward_2d(const DctBasis& basis, const BlockMatrix& block) {
  check_same_side(basis.c(), block);
  return matmul(matmul(basis.c(), block), basis.ct());
}

// 2-D inverse transform: C^t * coeffs * C.
inline BlockMatrix inverse_2d(const DctBasis& basis, const BlockMatrix& coeffs) {
  check_same_side(basis.c(), coeffs);
  return matmul(matmul(basis.ct(), coeffs), basis.c());
}

}  // namespace dctfilter
