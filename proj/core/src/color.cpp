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

#include "cvdkit/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

constexpr double kLabEpsilon = 216.0 / 24389.0;  // (6/29)^3
constexpr double kLabDelta = 6.0 / 29.0;

double lab_f(double t) {
  if (t > kLabEpsilon) return std::cbrt(t);
  return t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
}

double lab_f_inverse(double t) {
  if (t > kLabDelta) return t * t * t;
  return 3.0 * kLabDelta * kLabDelta * (t - 4.0 / 29.0);
}

double to_linear_channel(double v) {
  if (v <= 0.04045) return v / 12.92;
  return std::pow((v + 0.055) / 1.055, 2.4);
}

double to_srgb_channel(double v) {
  if (v <= 0.0031308) return v * 12.92;
  return 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

void check_unit(double v, const char* space, const char* channel) {
  if (!(v >= 0.0 && v <= 1.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s channel %s = %g outside [0,1]", space, channel, v);
    throw DomainError(buf);
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

UnitSRGB decode(SRGB8 c) { return {c.r / 255.0, c.g / 255.0, c.b / 255.0}; }

SRGB8 encode(UnitSRGB c) {
  auto q = [](double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(v * 255.0));
  };
  return {q(c.r), q(c.g), q(c.b)};
}

LinearRGB srgb_to_linear(UnitSRGB c) {
  check_unit(c.r, "sRGB", "r");
  check_unit(c.g, "sRGB", "g");
  check_unit(c.b, "sRGB", "b");
  return {to_linear_channel(c.r), to_linear_channel(c.g), to_linear_channel(c.b)};
}

UnitSRGB linear_to_srgb(LinearRGB c) {
  check_unit(c.r, "linear RGB", "r");
  check_unit(c.g, "linear RGB", "g");
  check_unit(c.b, "linear RGB", "b");
  return {to_srgb_channel(c.r), to_srgb_channel(c.g), to_srgb_channel(c.b)};
}

Lab xyz_to_lab(const Vec3& xyz) {
  const double fx = lab_f(xyz[0] / matrices::kWhiteXyz[0]);
  const double fy = lab_f(xyz[1] / matrices::kWhiteXyz[1]);
  const double fz = lab_f(xyz[2] / matrices::kWhiteXyz[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Lab linear_to_lab(LinearRGB c) { return xyz_to_lab(matrices::kLinearToXyz * c.vec()); }

LinearRGB lab_to_linear(Lab c) {
  const double fy = (c.L + 16.0) / 116.0;
  const double fx = fy + c.a / 500.0;
  const double fz = fy - c.b / 200.0;
  const Vec3 xyz{lab_f_inverse(fx) * matrices::kWhiteXyz[0],
                 lab_f_inverse(fy) * matrices::kWhiteXyz[1],
                 lab_f_inverse(fz) * matrices::kWhiteXyz[2]};
  return LinearRGB::from(matrices::kXyzToLinear * xyz);
}

LMS linear_to_lms(LinearRGB c) { return LMS::from(matrices::kLinearToLms * c.vec()); }

LinearRGB lms_to_linear(LMS c) { return LinearRGB::from(matrices::kLmsToLinear * c.vec()); }

double delta_e(const Lab& a, const Lab& b) {
  const double dl = a.L - b.L;
  const double da = a.a - b.a;
  const double db = a.b - b.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

double luminance(LinearRGB c) {
  return kLuminanceWeights[0] * c.r + kLuminanceWeights[1] * c.g + kLuminanceWeights[2] * c.b;
}

bool in_gamut(LinearRGB c, double tolerance) {
  auto ok = [tolerance](double v) { return v >= -tolerance && v <= 1.0 + tolerance; };
  return ok(c.r) && ok(c.g) && ok(c.b);
}

LinearRGB clamp_gamut(LinearRGB c) {
  return {std::clamp(c.r, 0.0, 1.0), std::clamp(c.g, 0.0, 1.0), std::clamp(c.b, 0.0, 1.0)};
}

LinearRGB to_linear(SRGB8 c) { return srgb_to_linear(decode(c)); }

SRGB8 to_srgb8(LinearRGB c) { return encode(linear_to_srgb(clamp_gamut(c))); }

Lab to_lab(SRGB8 c) { return linear_to_lab(to_linear(c)); }

SRGB8 lab_to_srgb8(Lab c) { return to_srgb8(lab_to_linear(c)); }

SRGB8 parse_hex(std::string_view text) {
  if (!text.empty() && text.front() == '#') text.remove_prefix(1);
  if (text.size() != 6) {
    throw ParameterError("color '" + std::string(text) + "' is not of the form RRGGBB");
  }
  std::array<std::uint8_t, 3> ch{};
  for (int i = 0; i < 3; ++i) {
    const int hi = hex_digit(text[2 * i]);
    const int lo = hex_digit(text[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParameterError("color '" + std::string(text) + "' contains a non-hex digit");
    }
    ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {ch[0], ch[1], ch[2]};
}

std::string to_hex(SRGB8 c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

}  // namespace cvd
