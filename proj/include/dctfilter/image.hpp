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
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dctfilter/block_matrix.hpp"
#include "dctfilter/filter.hpp"
#include "dctfilter/mask.hpp"
#include "dctfilter/spatial.hpp"

namespace dctfilter {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;  // row-major, width * height entries

  std::uint8_t at(int x, int y) const { return samples[size_t(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return samples[size_t(y) * width + x]; }
};

struct PgmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Reads the next header token, skipping whitespace and '#' comment lines.
inline std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (!std::isspace(ch)) break;
  }
  if (ch == EOF) throw PgmError("malformed PGM header: unexpected end of data");
  do {
    tok.push_back(char(ch));
  } while ((ch = in.get()) != EOF && !std::isspace(ch) && ch != '#');
  if (ch != EOF) in.unget();  // leave the terminator for the caller
  return tok;
}

inline int pgm_int(std::istream& in) {
  const std::string tok = pgm_token(in);
  size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw PgmError("malformed PGM header: expected integer, got '" + tok + "'");
  }
  if (pos != tok.size() || value < 0) {
    throw PgmError("malformed PGM header: expected integer, got '" + tok + "'");
  }
  return value;
}

}  // namespace detail

// Reads binary (P5) or ASCII (P2) PGM with maxval 255.
inline GrayImage load_pgm(std::istream& in) {
  const std::string magic = detail::pgm_token(in);
  if (magic != "P5" && magic != "P2") {
    throw PgmError("unsupported format: expected P5 or P2, got '" + magic + "'");
  }
  const int width = detail::pgm_int(in);
  const int height = detail::pgm_int(in);
  if (width < 1 || height < 1) throw PgmError("malformed PGM header: bad dimensions");
  const int maxval = detail::pgm_int(in);
  if (maxval != 255) {
    throw PgmError("unsupported maxval: expected 255, got " + std::to_string(maxval));
  }

  GrayImage img{width, height, {}};
  img.samples.resize(size_t(width) * height);
  if (magic == "P5") {
    // exactly one whitespace byte separates the header from the payload
    in.get();
    in.read(reinterpret_cast<char*>(img.samples.data()),
            std::streamsize(img.samples.size()));
    if (size_t(in.gcount()) != img.samples.size()) {
      throw PgmError("truncated PGM data");
    }
  } else {
    for (auto& s : img.samples) {
      int v;
      if (!(in >> v)) throw PgmError("truncated PGM data");
      if (v < 0 || v > 255) throw PgmError("malformed PGM sample out of range");
      s = std::uint8_t(v);
    }
  }
  return img;
}

inline GrayImage load_pgm(const std::string& bytes) {
  std::istringstream in(bytes);
  return load_pgm(in);
}

// Writes binary (P5) PGM.
inline void save_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples.data()),
            std::streamsize(img.samples.size()));
}

inline std::string save_pgm(const GrayImage& img) {
  std::ostringstream out;
  save_pgm(out, img);
  return out.str();
}

inline GrayImage load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open '" + path + "'");
  return load_pgm(in);
}

inline void save_pgm_file(const std::string& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError("cannot open '" + path + "' for writing");
  save_pgm(out, img);
  if (!out) throw PgmError("write failed for '" + path + "'");
}

// One n x n block cut from the image; row0/col0 is its pixel origin in the
// edge-padded image.
struct BlockTile {
  int row0;
  int col0;
  BlockMatrix block;
};

// Cuts the image into n x n blocks, extending to a multiple of n by edge
// replication first. Tiles are emitted row-major.
inline std::vector<BlockTile> tile(const GrayImage& img, int n) {
  if (n < 2) throw std::invalid_argument("tile: block side must be >= 2");
  const int bw = (img.width + n - 1) / n;
  const int bh = (img.height + n - 1) / n;
  std::vector<BlockTile> tiles;
  tiles.reserve(size_t(bw) * bh);
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      BlockMatrix block(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const int y = std::min(by * n + i, img.height - 1);
          const int x = std::min(bx * n + j, img.width - 1);
          block(i, j) = double(img.at(x, y));
        }
      }
      tiles.push_back({by * n, bx * n, std::move(block)});
    }
  }
  return tiles;
}

// Quantizes the tiles back into an image of the given size; pixels of tiles
// that extend past the right/bottom edge are cropped away.
inline GrayImage assemble(const std::vector<BlockTile>& tiles, int width, int height) {
  GrayImage img{width, height, std::vector<std::uint8_t>(size_t(width) * height, 0)};
  for (const BlockTile& t : tiles) {
    const int n = t.block.n();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int y = t.row0 + i;
        const int x = t.col0 + j;
        if (x < width && y < height) {
          img.at(x, y) = quantize_sample(t.block(i, j));
        }
      }
    }
  }
  return img;
}

// Filters every block independently (each block sees its own padding at its
// edges, so no data crosses tile seams), then reassembles and quantizes.
// The Dct path compiles one plan and runs the transform-domain pipeline per
// block; the Spatial path runs the reference convolution instead, and both
// produce identical 8-bit output.
inline GrayImage filter_image(const GrayImage& img, const Mask& mask,
                              PaddingMode padding, Domain path, int n = 8) {
  if (mask.k() > n) throw std::invalid_argument("filter_image: mask larger than block");
  std::vector<BlockTile> tiles = tile(img, n);
  if (path == Domain::kDct) {
    const FilterPlan plan(mask, n, padding);
    for (BlockTile& t : tiles) {
      t.block = plan.filter_block(t.block);
    }
  } else {
    for (BlockTile& t : tiles) {
      t.block = convolve(t.block, mask, padding);
    }
  }
  return assemble(tiles, img.width, img.height);
}

}  // namespace dctfilter
