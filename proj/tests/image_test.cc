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

#include "dctfilter/image.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace dctfilter {
namespace {

GrayImage random_image(std::mt19937_64& rng, int width, int height) {
  std::uniform_int_distribution<int> dist(0, 255);
  GrayImage img{width, height, {}};
  img.samples.resize(size_t(width) * height);
  for (auto& s : img.samples) s = std::uint8_t(dist(rng));
  return img;
}

TEST(PgmTest, ParsesMinimalP5) {
  const std::string bytes = std::string("P5\n2 2\n255\n") +
                            std::string("\x00\xff\x11\x22", 4);
  const GrayImage img = load_pgm(bytes);
  EXPECT_EQ(img.width, 2);
  EXPECT_EQ(img.height, 2);
  const std::vector<std::uint8_t> expected = {0x00, 0xff, 0x11, 0x22};
  EXPECT_EQ(img.samples, expected);
}

TEST(PgmTest, P2AndP5Agree) {
  const std::string ascii = "P2\n# a comment\n2 2\n255\n0 255\n17 34\n";
  const std::string binary = std::string("P5\n2 2\n255\n") +
                             std::string("\x00\xff\x11\x22", 4);
  const GrayImage a = load_pgm(ascii);
  const GrayImage b = load_pgm(binary);
  EXPECT_EQ(a.width, b.width);
  EXPECT_EQ(a.height, b.height);
  EXPECT_EQ(a.samples, b.samples);
}

TEST(PgmTest, SaveLoadRoundTrip) {
  std::mt19937_64 rng(1);
  const GrayImage img = random_image(rng, 37, 21);
  const GrayImage back = load_pgm(save_pgm(img));
  EXPECT_EQ(back.width, img.width);
  EXPECT_EQ(back.height, img.height);
  EXPECT_EQ(back.samples, img.samples);
}

TEST(PgmTest, DistinctErrors) {
  // color PGM is not supported
  EXPECT_THROW(load_pgm(std::string("P6\n2 2\n255\n")), PgmError);
  // wrong maxval
  EXPECT_THROW(load_pgm(std::string("P5\n2 2\n511\n")), PgmError);
  // bad header
  EXPECT_THROW(load_pgm(std::string("P5\n-2 2\n255\n")), PgmError);
  EXPECT_THROW(load_pgm(std::string("P5\nx 2\n255\n")), PgmError);
  // payload shorter than width*height
  EXPECT_THROW(load_pgm(std::string("P5\n2 2\n255\nab")), PgmError);
  EXPECT_THROW(load_pgm(std::string("P2\n2 2\n255\n0 1 2")), PgmError);
}

TEST(TileTest, ExactMultiple) {
  std::mt19937_64 rng(2);
  const GrayImage img = random_image(rng, 16, 16);
  const std::vector<BlockTile> tiles = tile(img, 8);
  EXPECT_EQ(tiles.size(), 4u);
}

TEST(TileTest, SingleBlockImage) {
  std::mt19937_64 rng(3);
  const GrayImage img = random_image(rng, 8, 8);
  const std::vector<BlockTile> tiles = tile(img, 8);
  ASSERT_EQ(tiles.size(), 1u);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      EXPECT_EQ(tiles[0].block(i, j), double(img.at(j, i)));
    }
  }
}

TEST(TileTest, PadsByEdgeReplication) {
  std::mt19937_64 rng(4);
  const GrayImage img = random_image(rng, 10, 10);
  const std::vector<BlockTile> tiles = tile(img, 8);
  ASSERT_EQ(tiles.size(), 4u);
  // tile at block row 0, block col 1 covers columns 8..15; columns past 9
  // replicate column 9
  const BlockTile& t = tiles[1];
  EXPECT_EQ(t.row0, 0);
  EXPECT_EQ(t.col0, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 2; j < 8; ++j) {
      EXPECT_EQ(t.block(i, j), double(img.at(9, i)));
    }
  }
  // bottom-right tile replicates the corner pixel
  const BlockTile& br = tiles[3];
  EXPECT_EQ(br.block(7, 7), double(img.at(9, 9)));
}

TEST(TileTest, AssembleInvertsTile) {
  std::mt19937_64 rng(5);
  for (auto [w, h] : {std::pair{16, 16}, std::pair{10, 10}, std::pair{13, 9}}) {
    const GrayImage img = random_image(rng, w, h);
    const GrayImage back = assemble(tile(img, 8), img.width, img.height);
    EXPECT_EQ(back.samples, img.samples);
  }
}

TEST(FilterImageTest, IdentityMask) {
  std::mt19937_64 rng(6);
  const GrayImage img = random_image(rng, 24, 17);
  for (Domain path : {Domain::kDct, Domain::kSpatial}) {
    const GrayImage out =
        filter_image(img, Mask::identity(), PaddingMode::kReplicate, path);
    EXPECT_EQ(out.samples, img.samples);
  }
}

TEST(FilterImageTest, ConstantImageUnderAveraging) {
  GrayImage img{20, 12, std::vector<std::uint8_t>(20 * 12, 77)};
  const GrayImage out =
      filter_image(img, Mask::average3(), PaddingMode::kReplicate, Domain::kDct);
  for (auto s : out.samples) {
    EXPECT_EQ(s, 77);
  }
}

// The transform path and the reference spatial path must agree on every
// pixel of every image.
TEST(FilterImageTest, PathsAgreeExactly) {
  std::mt19937_64 rng(7);
  const GrayImage img = random_image(rng, 40, 33);
  for (PaddingMode padding : {PaddingMode::kZero, PaddingMode::kReplicate}) {
    for (const Mask& mask : {Mask::gaussian3(), Mask::magic3(), Mask::average3()}) {
      const GrayImage via_dct = filter_image(img, mask, padding, Domain::kDct);
      const GrayImage via_spatial = filter_image(img, mask, padding, Domain::kSpatial);
      EXPECT_EQ(via_dct.samples, via_spatial.samples);
    }
  }
}

// Per-block filtering has no cross-block data flow, so processing order
// cannot matter; shuffling the tiles before assembly changes nothing.
TEST(FilterImageTest, BlockOrderIndependent) {
  std::mt19937_64 rng(8);
  const GrayImage img = random_image(rng, 32, 24);
  const FilterPlan plan(Mask::gaussian3(), 8, PaddingMode::kReplicate);

  std::vector<BlockTile> tiles = tile(img, 8);
  std::vector<size_t> order(tiles.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<BlockTile> shuffled;
  for (size_t i : order) shuffled.push_back(tiles[i]);
  for (BlockTile& t : shuffled) t.block = plan.filter_block(t.block);
  const GrayImage from_shuffled = assemble(shuffled, img.width, img.height);

  const GrayImage direct =
      filter_image(img, Mask::gaussian3(), PaddingMode::kReplicate, Domain::kDct);
  EXPECT_EQ(from_shuffled.samples, direct.samples);
}

TEST(FilterImageTest, MaskLargerThanBlockSide) {
  std::mt19937_64 rng(9);
  const GrayImage img = random_image(rng, 16, 16);
  const Mask wide(5, std::vector<double>(25, 0.04));
  EXPECT_THROW(filter_image(img, wide, PaddingMode::kZero, Domain::kDct, 4),
               std::invalid_argument);
}

}  // namespace
}  // namespace dctfilter
