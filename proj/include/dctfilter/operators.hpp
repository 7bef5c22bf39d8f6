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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dctfilter/block_matrix.hpp"
#include "dctfilter/dct.hpp"
#include "dctfilter/mask.hpp"
#include "dctfilter/spatial.hpp"

namespace dctfilter {

// Which representation an operator set acts on.
enum class Domain {
  kSpatial,  // factors multiply pixel blocks
  kDct,      // factors multiply DCT coefficient blocks
};

// One term of a compiled filter: the linear map X -> left * X * right.
struct SandwichPair {
  BlockMatrix left;
  BlockMatrix right;
};

// A filter compiled into sandwich terms. Applying the set means summing
// left * X * right over all pairs. Immutable once built.
struct OperatorSet {
  int n;
  PaddingMode padding;
  Domain domain;
  bool symmetric_merged;
  Mask mask;  // source kernel; identifies the set together with n/padding
  std::vector<SandwichPair> pairs;

  std::uint64_t mask_fingerprint() const { return mask.fingerprint(); }
};

// Row-translation matrix: left-multiplying by it moves block row i-offset
// into row i. Zero mode leaves vacated rows zero (offset +1 is a lower shift
// with a blank first row, offset -1 an upper shift with a blank last row);
// Replicate mode clamps to the nearest edge row instead, so every row of the
// result selects exactly one input row.
inline BlockMatrix build_shift_matrix(int n, int offset, PaddingMode padding) {
  if (std::abs(offset) >= n) {
    throw std::invalid_argument("build_shift_matrix: |offset| must be < n");
  }
  BlockMatrix s(n);
  for (int i = 0; i < n; ++i) {
    const int j = i - offset;
    if (padding == PaddingMode::kZero) {
      if (j >= 0 && j < n) s(i, j) = 1.0;
    } else {
      s(i, std::clamp(j, 0, n - 1)) = 1.0;
    }
  }
  return s;
}

// Band matrix for one kernel row: column j of block * T gathers input column
// j + c - h with weight w[c]. Zero mode drops off-edge weights; Replicate
// mode folds them into the nearest edge column (weights accumulate).
inline BlockMatrix build_band_matrix(std::span<const double> mask_row, int n,
                                     PaddingMode padding) {
  const int k = int(mask_row.size());
  if (k % 2 == 0) throw std::invalid_argument("build_band_matrix: row length must be odd");
  if (k > n) throw std::invalid_argument("build_band_matrix: row longer than block side");
  const int h = (k - 1) / 2;
  BlockMatrix t(n);
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < k; ++c) {
      const int src = j + c - h;
      if (padding == PaddingMode::kZero) {
        if (src >= 0 && src < n) t(src, j) += mask_row[c];
      } else {
        t(std::clamp(src, 0, n - 1), j) += mask_row[c];
      }
    }
  }
  return t;
}

// Compile a kernel into spatial-domain sandwich terms, one per kernel row:
// row r pairs the shift matrix of offset h - r with that row's band matrix.
// The center row's shift is the identity. Summing the terms applied to a
// block reproduces convolve() under the same padding mode.
inline OperatorSet build_spatial_operator_set(const Mask& mask, int n,
                                              PaddingMode padding) {
  if (mask.k() > n) {
    throw std::invalid_argument("build_spatial_operator_set: mask larger than block");
  }
  const int k = mask.k();
  const int h = mask.half();
  std::vector<SandwichPair> pairs;
  pairs.reserve(size_t(k));
  for (int r = 0; r < k; ++r) {
    std::span<const double> row(mask.weights().data() + size_t(r) * k, size_t(k));
    pairs.push_back({build_shift_matrix(n, h - r, padding),
                     build_band_matrix(row, n, padding)});
  }
  return OperatorSet{n, padding, Domain::kSpatial, false, mask, std::move(pairs)};
}

// Conjugate every factor with the basis: (L, R) -> (C L C^t, C R C^t). The
// resulting set acts on coefficient blocks and commutes with the transform:
// applying it to C X C^t equals C (apply(set, X)) C^t.
inline OperatorSet to_dct_domain(const OperatorSet& set, const DctBasis& basis) {
  if (set.domain == Domain::kDct) {
    throw std::invalid_argument("to_dct_domain: set is already in the DCT domain");
  }
  if (basis.n() != set.n) {
    throw std::invalid_argument("to_dct_domain: basis side mismatch");
  }
  auto conjugate = [&basis](const BlockMatrix& m) {
    return matmul(matmul(basis.c(), m), basis.ct());
  };
  OperatorSet out{set.n, set.padding, Domain::kDct, set.symmetric_merged,
                  set.mask, {}};
  out.pairs.reserve(set.pairs.size());
  for (const SandwichPair& p : set.pairs) {
    out.pairs.push_back({conjugate(p.left), conjugate(p.right)});
  }
  return out;
}

// Merge mirrored kernel rows of a row-symmetric kernel: rows r and k-1-r
// share one band matrix, so their shift matrices add into a single term.
// The pair count drops from k to ceil(k/2); outputs are unchanged.
inline OperatorSet merge_symmetric(const OperatorSet& set) {
  if (set.symmetric_merged) {
    throw std::invalid_argument("merge_symmetric: set is already merged");
  }
  if (!row_symmetric(set.mask)) {
    throw std::invalid_argument("merge_symmetric: mask rows are not symmetric");
  }
  const int k = set.mask.k();
  if (set.pairs.size() != size_t(k)) {
    throw std::invalid_argument("merge_symmetric: expected one pair per mask row");
  }
  OperatorSet out{set.n, set.padding, set.domain, true, set.mask, {}};
  out.pairs.reserve(size_t((k + 1) / 2));
  for (int r = 0; r < (k + 1) / 2; ++r) {
    const int mirror = k - 1 - r;
    if (r == mirror) {
      out.pairs.push_back(set.pairs[size_t(r)]);
    } else {
      out.pairs.push_back({add(set.pairs[size_t(r)].left, set.pairs[size_t(mirror)].left),
                           set.pairs[size_t(r)].right});
    }
  }
  return out;
}

namespace detail {

// First-row and last-row selector matrices used by the correction terms.
inline BlockMatrix first_row_selector(int n) {
  BlockMatrix m(n);
  m(0, 0) = 1.0;
  return m;
}

inline BlockMatrix last_row_selector(int n) {
  BlockMatrix m(n);
  m(n - 1, n - 1) = 1.0;
  return m;
}

// Tridiagonal side matrix built from one kernel column or row triple
// (wa, wb, wc), with single off-diagonal entries in the first and last rows.
inline BlockMatrix side_matrix(int n, double wa, double wb, double wc) {
  BlockMatrix m(n);
  m(0, 1) = wc;
  for (int i = 1; i < n - 1; ++i) {
    m(i, i - 1) = wa;
    m(i, i) = wb;
    m(i, i + 1) = wc;
  }
  m(n - 1, n - 2) = wa;
  return m;
}

}  // namespace detail

// Six spatial-domain sandwich terms that, added to the zero-padding filter
// output, yield the border-replication filter output for a 3x3 kernel. Two
// terms patch the corner pixels, four patch the block sides. The sum equals
// the difference between Replicate-mode and Zero-mode filtering exactly.
inline std::vector<SandwichPair> build_replication_correction(const Mask& mask, int n) {
  if (mask.k() != 3) {
    throw std::invalid_argument("build_replication_correction: kernel must be 3x3");
  }
  if (n < 3) {
    throw std::invalid_argument("build_replication_correction: block side must be >= 3");
  }
  // Flat aliases, row-major: w1..w9 = w(0,0) .. w(2,2).
  const double w1 = mask.at(0, 0), w2 = mask.at(0, 1), w3 = mask.at(0, 2);
  const double w4 = mask.at(1, 0), w6 = mask.at(1, 2);
  const double w7 = mask.at(2, 0), w8 = mask.at(2, 1), w9 = mask.at(2, 2);

  const BlockMatrix u_l = detail::first_row_selector(n);
  const BlockMatrix b_r = detail::last_row_selector(n);

  BlockMatrix bott_cor(n);
  bott_cor(0, 0) = w4 + w7 + w8;          // bottom-left output pixel
  bott_cor(n - 1, n - 1) = w6 + w8 + w9;  // bottom-right output pixel

  BlockMatrix up_cor(n);
  up_cor(0, 0) = w1 + w2 + w4;          // top-left output pixel
  up_cor(n - 1, n - 1) = w2 + w3 + w6;  // top-right output pixel

  const BlockMatrix right = detail::side_matrix(n, w3, w6, w9);
  const BlockMatrix left = detail::side_matrix(n, w1, w4, w7);
  const BlockMatrix up = detail::side_matrix(n, w3, w2, w1);
  const BlockMatrix bottom = detail::side_matrix(n, w9, w8, w7);

  std::vector<SandwichPair> pairs;
  pairs.reserve(6);
  pairs.push_back({b_r, bott_cor});  // bottom corners
  pairs.push_back({u_l, up_cor});    // top corners
  pairs.push_back({right, b_r});     // right side
  pairs.push_back({left, u_l});      // left side
  pairs.push_back({u_l, up});        // top side
  pairs.push_back({b_r, bottom});    // bottom side
  return pairs;
}

// Sandwich groups needed for the six correction terms once coinciding
// couples are folded together: corners, left/right and top/bottom each
// collapse into a single group when their factor matrices agree, which for
// a fully symmetric kernel halves the count from 6 to 3.
inline int count_replication_groups(const Mask& mask, int n) {
  const std::vector<SandwichPair> pairs = build_replication_correction(mask, n);
  int groups = 6;
  if (max_abs_diff(pairs[0].right, pairs[1].right) == 0.0) --groups;
  if (max_abs_diff(pairs[2].left, pairs[3].left) == 0.0) --groups;
  if (max_abs_diff(pairs[4].right, pairs[5].right) == 0.0) --groups;
  return groups;
}

// Matrix multiplications needed to apply the set to one block: two per
// sandwich term, one when the left factor is the identity.
inline int count_matrix_multiplications(const OperatorSet& set) {
  int count = 0;
  const BlockMatrix eye = BlockMatrix::identity(set.n);
  for (const SandwichPair& p : set.pairs) {
    count += max_abs_diff(p.left, eye) == 0.0 ? 1 : 2;
  }
  return count;
}

}  // namespace dctfilter
