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

#include "cvdkit/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

std::uint32_t pack(SRGB8 c) { return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b; }

// Reads one whitespace-delimited header token, skipping comments. Consumes
// exactly one whitespace byte after the token.
std::string header_token(std::istream& in) {
  std::string tok;
  for (int ch = in.get(); ch != EOF; ch = in.get()) {
    if (ch == '#' && tok.empty()) {
      while (ch != EOF && ch != '\n') ch = in.get();
      continue;
    }
    if (std::isspace(ch)) {
      if (tok.empty()) continue;
      break;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  if (tok.empty() || tok.size() > 9) throw IoError(std::string("PPM: bad ") + what);
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw IoError(std::string("PPM: bad ") + what);
  }
  return std::stoul(tok);
}

}  // namespace

Image::Image(std::size_t width, std::size_t height, std::vector<SRGB8> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) throw ParameterError("image dimensions must be positive");
  if (pixels_.size() != width_ * height_) {
    throw ParameterError("pixel count does not match image dimensions");
  }
}

Image::Image(std::size_t width, std::size_t height, SRGB8 fill)
    : Image(width, height, std::vector<SRGB8>(width * height, fill)) {}

Image simulate_image(const Image& img, const CVDProfile& profile) {
  if (profile.is_identity()) return img;
  // Real images repeat colors heavily; memoize per distinct pixel value.
  std::map<std::uint32_t, SRGB8> cache;
  std::vector<SRGB8> out;
  out.reserve(img.pixels().size());
  for (const SRGB8& px : img.pixels()) {
    auto [it, inserted] = cache.try_emplace(pack(px));
    if (inserted) it->second = simulate(px, profile);
    out.push_back(it->second);
  }
  return Image(img.width(), img.height(), std::move(out));
}

Image read_ppm(std::istream& in) {
  if (header_token(in) != "P6") throw IoError("PPM: missing P6 magic");
  const std::size_t w = header_number(in, "width");
  const std::size_t h = header_number(in, "height");
  const std::size_t maxval = header_number(in, "maxval");
  if (w == 0 || h == 0) throw IoError("PPM: zero dimension");
  if (maxval != 255) throw IoError("PPM: only maxval 255 is supported");
  std::vector<SRGB8> px(w * h);
  std::vector<char> raw(w * h * 3);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw IoError("PPM: truncated pixel data");
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = {static_cast<std::uint8_t>(raw[3 * i]), static_cast<std::uint8_t>(raw[3 * i + 1]),
             static_cast<std::uint8_t>(raw[3 * i + 2])};
  }
  return Image(w, h, std::move(px));
}

Image read_ppm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const Image& img) {
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<char> raw;
  raw.reserve(img.pixels().size() * 3);
  for (const SRGB8& p : img.pixels()) {
    raw.push_back(static_cast<char>(p.r));
    raw.push_back(static_cast<char>(p.g));
    raw.push_back(static_cast<char>(p.b));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("PPM: write failed");
}

void write_ppm_file(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_ppm(out, img);
}

}  // namespace cvd
