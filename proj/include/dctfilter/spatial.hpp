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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dctfilter/block_matrix.hpp"
#include "dctfilter/mask.hpp"

namespace dctfilter {

// How pixels outside the block are treated during filtering.
enum class PaddingMode {
  kZero,       // out-of-block samples read as 0
  kReplicate,  // out-of-block samples read as the nearest edge sample
};

// Reference spatial-domain filter:
//
//   out(i, j) = sum over (r, c) of w(r, c) * in(pad(i + r - h), pad(j + c - h))
//
// with h = (k-1)/2. Deliberately a naive nested loop with no transform or
// operator machinery involved, so it cannot share bugs with the compiled
// sandwich-product path it is used to check.
inline BlockMatrix convolve(const BlockMatrix& block, const Mask& mask,
                            PaddingMode padding) {
  const int n = block.n();
  const int k = mask.k();
  const int h = mask.half();
  if (k > n) throw std::invalid_argument("convolve: mask larger than block");
  BlockMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          int si = i + r - h;
          int sj = j + c - h;
          if (padding == PaddingMode::kZero) {
            if (si < 0 || si >= n || sj < 0 || sj >= n) continue;
          } else {
            si = std::clamp(si, 0, n - 1);
            sj = std::clamp(sj, 0, n - 1);
          }
          acc += mask.at(r, c) * block(si, sj);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

// Round half away from zero, then clamp to [0, 255].
inline std::uint8_t quantize_sample(double v) {
  if (std::isnan(v)) throw std::invalid_argument("quantize: NaN sample");
  const double r = std::round(v);
  return std::uint8_t(std::clamp(r, 0.0, 255.0));
}

inline std::vector<std::uint8_t> quantize_u8(const BlockMatrix& block) {
  std::vector<std::uint8_t> out(block.data().size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = quantize_sample(block.data()[i]);
  }
  return out;
}

}  // namespace dctfilter
