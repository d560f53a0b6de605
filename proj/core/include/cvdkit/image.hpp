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

#ifndef CVDKIT_IMAGE_HPP_
#define CVDKIT_IMAGE_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cvdkit/color.hpp"
#include "cvdkit/simulate.hpp"

namespace cvd {

// Row-major 8-bit sRGB raster.
class Image {
 public:
  Image() = default;
  // Throws ParameterError unless width, height > 0 and the pixel count
  // matches.
  Image(std::size_t width, std::size_t height, std::vector<SRGB8> pixels);
  Image(std::size_t width, std::size_t height, SRGB8 fill);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::span<const SRGB8> pixels() const { return pixels_; }
  std::span<SRGB8> pixels() { return pixels_; }

  const SRGB8& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  SRGB8& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<SRGB8> pixels_;
};

Image simulate_image(const Image& img, const CVDProfile& profile);

// Binary PPM (P6, maxval 255). Readers accept '#' comments in the header and
// throw IoError on malformed or truncated input.
Image read_ppm(std::istream& in);
Image read_ppm_file(const std::string& path);
void write_ppm(std::ostream& out, const Image& img);
void write_ppm_file(const std::string& path, const Image& img);

}  // namespace cvd

#endif  // CVDKIT_IMAGE_HPP_
