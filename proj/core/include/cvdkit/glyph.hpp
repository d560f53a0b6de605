// Copyright 2026 The cvdkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVDKIT_GLYPH_HPP_
#define CVDKIT_GLYPH_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace cvd {

inline constexpr int kGlyphColumns = 5;
inline constexpr int kGlyphRows = 7;

// Where a digit sits on the plate: top-left corner of the 5x7 cell grid and
// the side length of one cell, all in unit-disk coordinates.
struct GlyphPlacement {
  double x = 0;
  double y = 0;
  double cell = 0;
  friend bool operator==(const GlyphPlacement&, const GlyphPlacement&) = default;
};

struct Glyph {
  char digit = '0';
  GlyphPlacement placement;
  friend bool operator==(const Glyph&, const Glyph&) = default;
};

// Point-membership test for one placed digit.
class GlyphMask {
 public:
  bool contains(double x, double y) const;
  double width() const { return placement_.cell * kGlyphColumns; }
  double height() const { return placement_.cell * kGlyphRows; }

 private:
  friend GlyphMask glyph_mask(char digit, const GlyphPlacement& placement);
  GlyphMask(const std::array<std::uint8_t, kGlyphRows>& rows, GlyphPlacement placement)
      : rows_(rows), placement_(placement) {}

  std::array<std::uint8_t, kGlyphRows> rows_;
  GlyphPlacement placement_;
};

// Throws ParameterError for non-digits, non-positive cell size, or a
// placement whose bounding box leaves the unit disk.
GlyphMask glyph_mask(char digit, const GlyphPlacement& placement);

// The embedded 5x7 bitmap row for `digit` (bit 4 = leftmost column).
std::uint8_t font_row(char digit, int row);

// Placements for `count` digits laid out side by side, centered on the plate.
std::vector<GlyphPlacement> layout_digits(int count);

}  // namespace cvd

#endif  // CVDKIT_GLYPH_HPP_
