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

#include <span>
#include <stdexcept>
#include <utility>

#include "dctfilter/block_matrix.hpp"
#include "dctfilter/dct.hpp"
#include "dctfilter/mask.hpp"
#include "dctfilter/operators.hpp"
#include "dctfilter/spatial.hpp"

namespace dctfilter {

// Sum of left * x * right over the pairs; an empty list maps to zero.
inline BlockMatrix apply_pairs(std::span<const SandwichPair> pairs,
                               const BlockMatrix& x) {
  BlockMatrix acc(x.n());
  for (const SandwichPair& p : pairs) {
    check_same_side(p.left, x);
    acc = add(acc, matmul(matmul(p.left, x), p.right));
  }
  return acc;
}

inline BlockMatrix apply(const OperatorSet& set, const BlockMatrix& x) {
  if (x.n() != set.n) {
    throw std::invalid_argument("apply: block side does not match operator set");
  }
  return apply_pairs(set.pairs, x);
}

// A kernel compiled for repeated use on coefficient blocks. Construction does
// all the expensive work once: the spatial operators are built, mirrored rows
// are merged whenever the kernel allows it, and everything is conjugated into
// the DCT domain. Filtering a block afterwards is only sandwich products and
// sums. Plans are immutable and safe to share across threads.
class FilterPlan {
 public:
  FilterPlan(const Mask& mask, int n, PaddingMode padding)
      : basis_(n),
        dct_set_(compile(mask, n, padding, basis_)) {}

  int n() const { return dct_set_.n; }
  PaddingMode padding() const { return dct_set_.padding; }
  const Mask& mask() const { return dct_set_.mask; }
  const DctBasis& basis() const { return basis_; }
  const OperatorSet& dct_set() const { return dct_set_; }

  // DCT coefficients in, filtered DCT coefficients out.
  BlockMatrix filter_coeffs(const BlockMatrix& coeffs) const {
    return apply(dct_set_, coeffs);
  }

  // Convenience round trip: transform, filter in the DCT domain, transform
  // back. Returns real-valued samples; quantization is the caller's job.
  BlockMatrix filter_block(const BlockMatrix& block) const {
    return inverse_2d(basis_, filter_coeffs(forward_2d(basis_, block)));
  }

 private:
  static OperatorSet compile(const Mask& mask, int n, PaddingMode padding,
                             const DctBasis& basis) {
    OperatorSet spatial = build_spatial_operator_set(mask, n, padding);
    if (row_symmetric(mask)) {
      spatial = merge_symmetric(spatial);
    }
    return to_dct_domain(spatial, basis);
  }

  DctBasis basis_;
  OperatorSet dct_set_;
};

}  // namespace dctfilter
