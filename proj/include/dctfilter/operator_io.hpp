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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dctfilter/operators.hpp"

namespace dctfilter {

struct OperatorDumpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// 17 significant digits: enough for the printed form to parse back to the
// exact same double.
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_matrix(std::ostream& out, const BlockMatrix& m) {
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      out << (j ? " " : "") << fmt_double(m(i, j));
    }
    out << "\n";
  }
}

inline std::string expect_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) {
    throw OperatorDumpError(std::string("operator dump truncated, expected ") + what);
  }
  return tok;
}

inline void expect_keyword(std::istream& in, const std::string& keyword) {
  const std::string tok = expect_token(in, keyword.c_str());
  if (tok != keyword) {
    throw OperatorDumpError("operator dump: expected '" + keyword + "', got '" + tok + "'");
  }
}

inline long read_long(std::istream& in, const char* what) {
  long v;
  if (!(in >> v)) {
    throw OperatorDumpError(std::string("operator dump: bad value for ") + what);
  }
  return v;
}

inline double read_double(std::istream& in) {
  double v;
  if (!(in >> v)) {
    throw OperatorDumpError("operator dump: bad numeric entry");
  }
  return v;
}

inline BlockMatrix read_matrix(std::istream& in, int n) {
  BlockMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = read_double(in);
    }
  }
  return m;
}

}  // namespace detail

inline const char* to_string(PaddingMode padding) {
  return padding == PaddingMode::kZero ? "zero" : "replicate";
}

inline const char* to_string(Domain domain) {
  return domain == Domain::kSpatial ? "spatial" : "dct";
}

// Plain-text dump of compiled operator sets. All doubles carry 17 significant
// digits, so a parsed dump reproduces the original sets bit for bit.
inline void write_operator_sets(std::ostream& out,
                                const std::vector<OperatorSet>& sets) {
  out << "dctfilter-operators 1\n";
  out << "sets " << sets.size() << "\n";
  for (const OperatorSet& set : sets) {
    const int k = set.mask.k();
    out << "set\n";
    out << "n " << set.n << "\n";
    out << "k " << k << "\n";
    out << "padding " << to_string(set.padding) << "\n";
    out << "domain " << to_string(set.domain) << "\n";
    out << "symmetric_merged " << (set.symmetric_merged ? 1 : 0) << "\n";
    char fp[24];
    std::snprintf(fp, sizeof fp, "%016llx",
                  static_cast<unsigned long long>(set.mask_fingerprint()));
    out << "mask_fingerprint " << fp << "\n";
    out << "mask\n";
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        out << (c ? " " : "") << detail::fmt_double(set.mask.at(r, c));
      }
      out << "\n";
    }
    out << "pairs " << set.pairs.size() << "\n";
    for (const SandwichPair& p : set.pairs) {
      out << "pair\n";
      out << "left\n";
      detail::write_matrix(out, p.left);
      out << "right\n";
      detail::write_matrix(out, p.right);
    }
  }
}

inline std::string format_operator_sets(const std::vector<OperatorSet>& sets) {
  std::ostringstream out;
  write_operator_sets(out, sets);
  return out.str();
}

inline std::vector<OperatorSet> read_operator_sets(std::istream& in) {
  detail::expect_keyword(in, "dctfilter-operators");
  const long version = detail::read_long(in, "format version");
  if (version != 1) {
    throw OperatorDumpError("operator dump: unsupported version " + std::to_string(version));
  }
  detail::expect_keyword(in, "sets");
  const long count = detail::read_long(in, "set count");
  if (count < 0) throw OperatorDumpError("operator dump: bad set count");

  std::vector<OperatorSet> sets;
  sets.reserve(size_t(count));
  for (long s = 0; s < count; ++s) {
    detail::expect_keyword(in, "set");
    detail::expect_keyword(in, "n");
    const int n = int(detail::read_long(in, "n"));
    detail::expect_keyword(in, "k");
    const int k = int(detail::read_long(in, "k"));
    detail::expect_keyword(in, "padding");
    const std::string pad = detail::expect_token(in, "padding mode");
    PaddingMode padding;
    if (pad == "zero") {
      padding = PaddingMode::kZero;
    } else if (pad == "replicate") {
      padding = PaddingMode::kReplicate;
    } else {
      throw OperatorDumpError("operator dump: unknown padding '" + pad + "'");
    }
    detail::expect_keyword(in, "domain");
    const std::string dom = detail::expect_token(in, "domain");
    Domain domain;
    if (dom == "spatial") {
      domain = Domain::kSpatial;
    } else if (dom == "dct") {
      domain = Domain::kDct;
    } else {
      throw OperatorDumpError("operator dump: unknown domain '" + dom + "'");
    }
    detail::expect_keyword(in, "symmetric_merged");
    const long merged = detail::read_long(in, "symmetric_merged");
    detail::expect_keyword(in, "mask_fingerprint");
    const std::string fp = detail::expect_token(in, "mask fingerprint");

    detail::expect_keyword(in, "mask");
    if (k < 1) throw OperatorDumpError("operator dump: bad mask side");
    std::vector<double> weights(size_t(k) * k);
    for (double& w : weights) w = detail::read_double(in);
    Mask mask(k, std::move(weights));

    char expect_fp[24];
    std::snprintf(expect_fp, sizeof expect_fp, "%016llx",
                  static_cast<unsigned long long>(mask.fingerprint()));
    if (fp != expect_fp) {
      throw OperatorDumpError("operator dump: mask fingerprint mismatch");
    }

    detail::expect_keyword(in, "pairs");
    const long npairs = detail::read_long(in, "pair count");
    if (npairs < 0) throw OperatorDumpError("operator dump: bad pair count");
    OperatorSet set{n, padding, domain, merged != 0, std::move(mask), {}};
    set.pairs.reserve(size_t(npairs));
    for (long p = 0; p < npairs; ++p) {
      detail::expect_keyword(in, "pair");
      detail::expect_keyword(in, "left");
      BlockMatrix left = detail::read_matrix(in, n);
      detail::expect_keyword(in, "right");
      BlockMatrix right = detail::read_matrix(in, n);
      set.pairs.push_back({std::move(left), std::move(right)});
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

inline std::vector<OperatorSet> read_operator_sets(const std::string& text) {
  std::istringstream in(text);
  return read_operator_sets(in);
}

}  // namespace dctfilter
