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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dctfilter/dctfilter.hpp"

namespace {

using namespace dctfilter;

// exit codes: 0 success/verified, 1 verification failure, 2 usage or I/O error
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaskOptions {
  std::string preset;
  std::string mask_file;
  std::string weights;
};

void add_mask_options(CLI::App* cmd, MaskOptions& opts) {
  auto* preset = cmd->add_option(
      "--preset", opts.preset,
      "Named kernel: identity, average3, gaussian3 (sigma=1), magic3");
  auto* file = cmd->add_option("--mask", opts.mask_file,
                               "Text file holding k*k kernel weights, k odd");
  auto* inline_w = cmd->add_option("--weights", opts.weights,
                                   "Inline kernel weights, comma or space separated");
  preset->excludes(file)->excludes(inline_w);
  file->excludes(inline_w);
}

std::vector<double> parse_weight_list(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> weights;
  double v;
  while (in >> v) weights.push_back(v);
  std::string leftover;
  if (in.clear(), in >> leftover) {
    throw UsageError("bad kernel weight '" + leftover + "'");
  }
  return weights;
}

Mask mask_from_weights(std::vector<double> weights) {
  const int k = int(std::lround(std::sqrt(double(weights.size()))));
  if (k < 1 || size_t(k) * k != weights.size() || k % 2 == 0) {
    throw UsageError("kernel needs an odd square number of weights, got " +
                     std::to_string(weights.size()));
  }
  return Mask(k, std::move(weights));
}

Mask resolve_mask(const MaskOptions& opts) {
  const int sources = int(!opts.preset.empty()) + int(!opts.mask_file.empty()) +
                      int(!opts.weights.empty());
  if (sources != 1) {
    throw UsageError("exactly one of --preset, --mask, --weights is required");
  }
  if (!opts.preset.empty()) {
    if (opts.preset == "identity") return Mask::identity();
    if (opts.preset == "average3") return Mask::average3();
    if (opts.preset == "gaussian3") return Mask::gaussian3();
    if (opts.preset == "magic3") return Mask::magic3();
    throw UsageError("unknown preset '" + opts.preset + "'");
  }
  if (!opts.mask_file.empty()) {
    std::ifstream in(opts.mask_file);
    if (!in) throw UsageError("cannot open mask file '" + opts.mask_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return mask_from_weights(parse_weight_list(buffer.str()));
  }
  return mask_from_weights(parse_weight_list(opts.weights));
}

PaddingMode parse_padding(const std::string& name) {
  if (name == "zero") return PaddingMode::kZero;
  if (name == "replicate") return PaddingMode::kReplicate;
  throw UsageError("unknown padding '" + name + "'");
}

Domain parse_path(const std::string& name) {
  if (name == "dct") return Domain::kDct;
  if (name == "spatial") return Domain::kSpatial;
  throw UsageError("unknown path '" + name + "'");
}

BlockMatrix read_block_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open block file '" + path + "'");
  BlockMatrix block(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      long v;
      if (!(in >> v)) throw UsageError("block file needs " + std::to_string(n * n) +
                                       " whitespace-separated integers");
      if (v < 0 || v > 255) {
        throw UsageError("block sample " + std::to_string(v) + " outside 0..255");
      }
      block(i, j) = double(v);
    }
  }
  long extra;
  if (in >> extra) throw UsageError("block file has more than n*n samples");
  return block;
}

void print_u8_block(std::ostream& out, const BlockMatrix& block) {
  const std::vector<std::uint8_t> q = quantize_u8(block);
  const int n = block.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out << (j ? " " : "") << int(q[size_t(i) * n + j]);
    }
    out << "\n";
  }
}

void print_real_block(std::ostream& out, const BlockMatrix& block) {
  char buf[32];
  const int n = block.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%11.4f", block(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// build-operators

int cmd_build_operators(const MaskOptions& mask_opts, int n,
                        const std::string& padding_name, const std::string& out_path) {
  const Mask mask = resolve_mask(mask_opts);
  if (mask.k() > n) throw UsageError("kernel side exceeds block side");
  const PaddingMode padding = parse_padding(padding_name);

  OperatorSet spatial = build_spatial_operator_set(mask, n, padding);
  if (row_symmetric(mask)) spatial = merge_symmetric(spatial);
  const DctBasis basis(n);
  const OperatorSet dct = to_dct_domain(spatial, basis);

  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
  write_operator_sets(out, {spatial, dct});
  if (!out) throw UsageError("write failed for '" + out_path + "'");

  std::cout << "wrote " << out_path << ": spatial + dct operator sets, "
            << spatial.pairs.size() << " pair(s) each, symmetric_merged="
            << (spatial.symmetric_merged ? "yes" : "no") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// filter-block

int cmd_filter_block(const std::string& in_path, const MaskOptions& mask_opts, int n,
                     const std::string& padding_name, const std::string& out_path,
                     bool verbose, bool compare_oracle) {
  const Mask mask = resolve_mask(mask_opts);
  if (mask.k() > n) throw UsageError("kernel side exceeds block side");
  const PaddingMode padding = parse_padding(padding_name);
  const BlockMatrix block = read_block_file(in_path, n);

  const FilterPlan plan(mask, n, padding);
  const BlockMatrix coeffs = forward_2d(plan.basis(), block);
  const BlockMatrix filtered_coeffs = plan.filter_coeffs(coeffs);
  const BlockMatrix filtered = inverse_2d(plan.basis(), filtered_coeffs);

  if (verbose) {
    std::cout << "input dct coefficients:\n";
    print_real_block(std::cout, coeffs);
    std::cout << "filtered dct coefficients:\n";
    print_real_block(std::cout, filtered_coeffs);
  }

  if (out_path.empty()) {
    if (verbose) std::cout << "filtered block:\n";
    print_u8_block(std::cout, filtered);
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
    print_u8_block(out, filtered);
  }

  if (verbose || compare_oracle) {
    const BlockMatrix oracle = convolve(block, mask, padding);
    int mismatches = 0;
    const std::vector<std::uint8_t> qa = quantize_u8(filtered);
    const std::vector<std::uint8_t> qb = quantize_u8(oracle);
    for (size_t i = 0; i < qa.size(); ++i) mismatches += qa[i] != qb[i];
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", max_abs_diff(filtered, oracle));
    std::cout << "oracle max-abs error: " << err << "\n";
    std::cout << "u8 mismatches: " << mismatches << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// filter-image

int cmd_filter_image(const std::string& in_path, const MaskOptions& mask_opts, int n,
                     const std::string& padding_name, const std::string& path_name,
                     const std::string& out_path) {
  const Mask mask = resolve_mask(mask_opts);
  if (mask.k() > n) throw UsageError("kernel side exceeds block side");
  const GrayImage img = load_pgm_file(in_path);
  const GrayImage out =
      filter_image(img, mask, parse_padding(padding_name), parse_path(path_name), n);
  save_pgm_file(out_path, out);
  std::cout << "wrote " << out_path << " (" << out.width << "x" << out.height << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  std::string name;
  double max_err = 0.0;
  long long mismatches = 0;
};

void print_suite(const SuiteResult& r) {
  char err[32];
  std::snprintf(err, sizeof err, "%.3e", r.max_err);
  std::printf("%-22s max_float_err=%s  u8_mismatches=%lld\n", r.name.c_str(), err,
              r.mismatches);
}

// DCT-path filtering vs the spatial reference for one kernel size and
// padding mode; `corrupt` damages one operator entry to prove the harness
// notices.
SuiteResult run_filter_suite(const std::string& name, int k, PaddingMode padding,
                             int trials, std::uint64_t seed, bool corrupt) {
  SuiteResult result{name};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_int_distribution<int> sample(0, 255);
  const DctBasis basis(8);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> w(size_t(k) * k);
    for (double& v : w) v = weight(rng);
    const Mask mask(k, std::move(w));

    OperatorSet spatial = build_spatial_operator_set(mask, 8, padding);
    if (row_symmetric(mask)) spatial = merge_symmetric(spatial);
    OperatorSet dct = to_dct_domain(spatial, basis);
    if (corrupt && t == 0) dct.pairs[0].left(0, 0) += 1e-3;

    BlockMatrix block(8);
    for (double& v : block.data()) v = double(sample(rng));

    const BlockMatrix filtered = inverse_2d(basis, apply(dct, forward_2d(basis, block)));
    const BlockMatrix oracle = convolve(block, mask, padding);
    result.max_err = std::max(result.max_err, max_abs_diff(filtered, oracle));
    const std::vector<std::uint8_t> qa = quantize_u8(filtered);
    const std::vector<std::uint8_t> qb = quantize_u8(oracle);
    for (size_t i = 0; i < qa.size(); ++i) result.mismatches += qa[i] != qb[i];
  }
  return result;
}

SuiteResult run_merge_suite(int trials, std::uint64_t seed) {
  SuiteResult result{"symmetric-merge"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_int_distribution<int> sample(0, 255);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> w(9);
    for (int c = 0; c < 3; ++c) {
      w[c] = w[6 + c] = weight(rng);
      w[3 + c] = weight(rng);
    }
    const Mask mask(3, std::move(w));
    const OperatorSet set = build_spatial_operator_set(mask, 8, PaddingMode::kZero);
    const OperatorSet merged = merge_symmetric(set);
    BlockMatrix block(8);
    for (double& v : block.data()) v = double(sample(rng));
    result.max_err = std::max(result.max_err,
                              max_abs_diff(apply(set, block), apply(merged, block)));
  }
  return result;
}

SuiteResult run_correction_suite(int trials, std::uint64_t seed) {
  SuiteResult result{"correction-identity"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_int_distribution<int> sample(0, 255);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> w(9);
    for (double& v : w) v = weight(rng);
    const Mask mask(3, std::move(w));
    const OperatorSet zero_set = build_spatial_operator_set(mask, 8, PaddingMode::kZero);
    const OperatorSet repl_set =
        build_spatial_operator_set(mask, 8, PaddingMode::kReplicate);
    const std::vector<SandwichPair> correction = build_replication_correction(mask, 8);
    BlockMatrix block(8);
    for (double& v : block.data()) v = double(sample(rng));
    const BlockMatrix patched = add(apply(zero_set, block), apply_pairs(correction, block));
    result.max_err = std::max(result.max_err,
                              max_abs_diff(patched, apply(repl_set, block)));
  }
  return result;
}

int cmd_verify(int trials, std::uint64_t seed, bool corrupt) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  std::vector<SuiteResult> results;
  std::uint64_t suite_seed = seed;
  for (int k : {1, 3, 5, 7}) {
    results.push_back(run_filter_suite("zero-pad k=" + std::to_string(k), k,
                                       PaddingMode::kZero, trials, ++suite_seed,
                                       corrupt && k == 3));
  }
  for (int k : {1, 3, 5, 7}) {
    results.push_back(run_filter_suite("replicate k=" + std::to_string(k), k,
                                       PaddingMode::kReplicate, trials, ++suite_seed,
                                       false));
  }
  results.push_back(run_merge_suite(trials, ++suite_seed));
  results.push_back(run_correction_suite(trials, ++suite_seed));

  bool ok = true;
  for (const SuiteResult& r : results) {
    print_suite(r);
    ok = ok && r.mismatches == 0 && r.max_err < 1e-9;
  }
  std::printf("%s\n", ok ? "VERIFIED" : "FAILED");
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const MaskOptions& mask_opts, int n, const std::string& padding_name,
              int blocks, std::uint64_t seed) {
  if (blocks < 1) throw UsageError("--blocks must be >= 1");
  const Mask mask = resolve_mask(mask_opts);
  if (mask.k() > n) throw UsageError("kernel side exceeds block side");
  const PaddingMode padding = parse_padding(padding_name);

  const OperatorSet unmerged = build_spatial_operator_set(mask, n, padding);
  const bool symmetric = row_symmetric(mask);
  const OperatorSet spatial = symmetric ? merge_symmetric(unmerged) : unmerged;
  const DctBasis basis(n);
  const OperatorSet compiled = to_dct_domain(spatial, basis);

  std::printf("kernel %dx%d on %dx%d blocks, %s padding\n", mask.k(), mask.k(), n, n,
              to_string(padding));
  std::printf("row symmetric: %s\n", symmetric ? "yes" : "no");
  // multiplication counts are structural, so count on the spatial sets where
  // the center identity factor is exact
  if (symmetric) {
    std::printf("filtering sandwiches: %zu merged vs %zu unmerged\n",
                spatial.pairs.size(), unmerged.pairs.size());
    std::printf("matrix multiplications per block: %d merged vs %d unmerged\n",
                count_matrix_multiplications(spatial),
                count_matrix_multiplications(unmerged));
  } else {
    std::printf("filtering sandwiches: %zu (kernel rows not mergeable)\n",
                unmerged.pairs.size());
    std::printf("matrix multiplications per block: %d\n",
                count_matrix_multiplications(unmerged));
  }
  if (mask.k() == 3) {
    std::printf("replication groups: %d of 6\n", count_replication_groups(mask, n));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sample(0, 255);
  std::vector<BlockMatrix> coeff_blocks;
  std::vector<BlockMatrix> pixel_blocks;
  coeff_blocks.reserve(size_t(blocks));
  pixel_blocks.reserve(size_t(blocks));
  for (int b = 0; b < blocks; ++b) {
    BlockMatrix block(n);
    for (double& v : block.data()) v = double(sample(rng));
    coeff_blocks.push_back(forward_2d(basis, block));
    pixel_blocks.push_back(std::move(block));
  }

  using Clock = std::chrono::steady_clock;
  volatile double sink = 0.0;  // keep the loops from being optimized out

  const auto dct_start = Clock::now();
  for (const BlockMatrix& c : coeff_blocks) {
    sink = apply(compiled, c)(0, 0);
  }
  const double dct_us =
      std::chrono::duration<double, std::micro>(Clock::now() - dct_start).count() / blocks;

  const auto spatial_start = Clock::now();
  for (const BlockMatrix& b : pixel_blocks) {
    sink = convolve(b, mask, padding)(0, 0);
  }
  const double spatial_us =
      std::chrono::duration<double, std::micro>(Clock::now() - spatial_start).count() /
      blocks;
  (void)sink;

  std::printf("dct-domain apply: %.3f us/block over %d blocks\n", dct_us, blocks);
  std::printf("spatial reference: %.3f us/block over %d blocks\n", spatial_us, blocks);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block image filtering directly in the DCT domain"};
  app.require_subcommand(1);

  int n = 8;
  std::string padding = "replicate";
  std::string path = "dct";
  std::string out_path;
  std::string in_path;
  int trials = 1000;
  int blocks = 5000;
  std::uint64_t seed = 42;
  bool verbose = false;
  bool compare_oracle = false;
  bool corrupt = false;
  MaskOptions mask_opts;

  auto* build = app.add_subcommand(
      "build-operators", "Compile a kernel into operator matrices and dump them");
  build->add_option("--n", n, "Block side length")->capture_default_str();
  build->add_option("--padding", padding, "zero or replicate")->capture_default_str();
  build->add_option("--out", out_path, "Output dump file")->required();
  add_mask_options(build, mask_opts);

  auto* fblock = app.add_subcommand("filter-block",
                                    "Filter one n x n block given as text integers");
  fblock->add_option("input", in_path, "Block file (n*n integers 0..255)")->required();
  fblock->add_option("--n", n, "Block side length")->capture_default_str();
  fblock->add_option("--padding", padding, "zero or replicate")->capture_default_str();
  fblock->add_option("--out", out_path, "Write the filtered block here instead of stdout");
  fblock->add_flag("--verbose", verbose, "Also print DCT coefficients and oracle error");
  fblock->add_flag("--compare-oracle", compare_oracle,
                   "Print max-abs error and u8 mismatch count vs the spatial reference");
  add_mask_options(fblock, mask_opts);

  auto* fimage = app.add_subcommand("filter-image", "Filter a PGM image block by block");
  fimage->add_option("input", in_path, "Input PGM (P5 or P2, maxval 255)")->required();
  fimage->add_option("--n", n, "Block side length")->capture_default_str();
  fimage->add_option("--padding", padding, "zero or replicate")->capture_default_str();
  fimage->add_option("--path", path, "dct or spatial")->capture_default_str();
  fimage->add_option("--out", out_path, "Output PGM file")->required();
  add_mask_options(fimage, mask_opts);

  auto* verify = app.add_subcommand(
      "verify", "Run the randomized DCT-vs-spatial equivalence suites");
  verify->add_option("--trials", trials, "Cases per suite")->capture_default_str();
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_flag("--corrupt", corrupt,
                   "Damage one operator entry first (harness self-check)");

  auto* bench = app.add_subcommand("bench", "Report operator counts and timings");
  bench->add_option("--n", n, "Block side length")->capture_default_str();
  bench->add_option("--padding", padding, "zero or replicate")->capture_default_str();
  bench->add_option("--blocks", blocks, "Blocks to time")->capture_default_str();
  bench->add_option("--seed", seed, "Random seed")->capture_default_str();
  add_mask_options(bench, mask_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build_operators(mask_opts, n, padding, out_path);
    if (*fblock) {
      return cmd_filter_block(in_path, mask_opts, n, padding, out_path, verbose,
                              compare_oracle);
    }
    if (*fimage) return cmd_filter_image(in_path, mask_opts, n, padding, path, out_path);
    if (*verify) return cmd_verify(trials, seed, corrupt);
    if (*bench) return cmd_bench(mask_opts, n, padding, blocks, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
