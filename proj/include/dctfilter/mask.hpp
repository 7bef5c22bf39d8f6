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
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dctfilter {

// K x K filter kernel, K odd, row-major weights.
class Mask {
 public:
  Mask(int k, std::vector<double> weights) : k_(k), w_(std::move(weights)) {
    if (k < 1 || k % 2 == 0) {
      throw std::invalid_argument("Mask: side must be odd and >= 1");
    }
    if (w_.size() != size_t(k) * k) {
      throw std::invalid_argument("Mask: weight count must be k*k");
    }
    for (double v : w_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("Mask: weights must be finite");
      }
    }
  }

  int k() const { return k_; }
  int half() const { return (k_ - 1) / 2; }
  double at(int r, int c) const { return w_[size_t(r) * k_ + c]; }
  const std::vector<double>& weights() const { return w_; }

  // FNV-1a over the side length and the IEEE bit patterns of the weights.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
      for (int byte = 0; byte < 8; ++byte) {
        h ^= (v >> (8 * byte)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(std::uint64_t(k_));
    for (double v : w_) {
      std::uint64_t bits;
      static_assert(sizeof bits == sizeof v);
      std::memcpy(&bits, &v, sizeof bits);
      mix(bits);
    }
    return h;
  }

  // Pass-through 1x1 kernel.
  static Mask identity() { return Mask(1, {1.0}); }

  // 3x3 box average.
  static Mask average3() { return Mask(3, std::vector<double>(9, 1.0 / 9.0)); }

  // 3x3 Gaussian, normalized to unit sum.
  static Mask gaussian3(double sigma = 1.0) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian3: sigma must be > 0");
    std::vector<double> w(9);
    double sum = 0.0;
    for (int r = -1; r <= 1; ++r) {
      for (int c = -1; c <= 1; ++c) {
        const double v = std::exp(-(r * r + c * c) / (2.0 * sigma * sigma));
        w[size_t(r + 1) * 3 + (c + 1)] = v;
        sum += v;
      }
    }
    for (double& v : w) v /= sum;
    return Mask(3, std::move(w));
  }

  // Magic square of order 3; rows are deliberately asymmetric.
  static Mask magic3() {
    return Mask(3, {8, 1, 6, 3, 5, 7, 4, 9, 2});
  }

 private:
  int k_;
  std::vector<double> w_;
};

// True iff row r equals row k-1-r elementwise for every r.
inline bool row_symmetric(const Mask& mask) {
  const int k = mask.k();
  for (int r = 0; r < k / 2; ++r) {
    for (int c = 0; c < k; ++c) {
      if (mask.at(r, c) != mask.at(k - 1 - r, c)) return false;
    }
  }
  return true;
}

}  // namespace dctfilter
