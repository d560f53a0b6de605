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

#include "cvdkit/glyph.hpp"

#include <cmath>
#include <string>

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

// clang-format off
constexpr std::array<std::array<std::uint8_t, kGlyphRows>, 10> kFont{{
    {0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110},  // 0
    {0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110},  // 1
    {0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111},  // 2
    {0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110},  // 3
    {0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010},  // 4
    {0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110},  // 5
    {0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110},  // 6
    {0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000},  // 7
    {0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110},  // 8
    {0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100},  // 9
}};
// clang-format on

// Radius the laid-out digit block must stay within.
constexpr double kLayoutRadius = 0.82;

}  // namespace

std::uint8_t font_row(char digit, int row) {
  if (digit < '0' || digit > '9') {
    throw ParameterError(std::string("glyph '") + digit + "' is not a decimal digit");
  }
  if (row < 0 || row >= kGlyphRows) throw ParameterError("font row out of range");
  return kFont[digit - '0'][row];
}

bool GlyphMask::contains(double x, double y) const {
  const double u = (x - placement_.x) / placement_.cell;
  const double v = (y - placement_.y) / placement_.cell;
  if (u < 0.0 || v < 0.0 || u >= kGlyphColumns || v >= kGlyphRows) return false;
  const int col = static_cast<int>(u);
  const int row = static_cast<int>(v);
  return (rows_[row] >> (kGlyphColumns - 1 - col)) & 1U;
}

GlyphMask glyph_mask(char digit, const GlyphPlacement& placement) {
  if (digit < '0' || digit > '9') {
    throw ParameterError(std::string("glyph '") + digit + "' is not a decimal digit");
  }
  if (!(placement.cell > 0.0)) throw ParameterError("glyph cell size must be positive");
  const double x1 = placement.x + placement.cell * kGlyphColumns;
  const double y1 = placement.y + placement.cell * kGlyphRows;
  for (double cx : {placement.x, x1}) {
    for (double cy : {placement.y, y1}) {
      if (cx * cx + cy * cy > 1.0) throw ParameterError("glyph placement leaves the unit disk");
    }
  }
  return GlyphMask(kFont[digit - '0'], placement);
}

std::vector<GlyphPlacement> layout_digits(int count) {
  if (count < 1 || count > 3) throw ParameterError("plates carry one to three digits");
  // `count` glyphs with one blank column between neighbours.
  const double cols = count * kGlyphColumns + (count - 1);
  const double half_diag = std::hypot(cols / 2.0, kGlyphRows / 2.0);
  const double cell = kLayoutRadius / half_diag;
  std::vector<GlyphPlacement> out;
  const double x0 = -cols * cell / 2.0;
  const double y0 = -kGlyphRows * cell / 2.0;
  for (int i = 0; i < count; ++i) {
    out.push_back({x0 + i * (kGlyphColumns + 1) * cell, y0, cell});
  }
  return out;
}

}  // namespace cvd
