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

#ifndef CVDKIT_COLOR_HPP_
#define CVDKIT_COLOR_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace cvd {

using Vec3 = std::array<double, 3>;

// Row-major 3x3 matrix. Small enough that everything is constexpr.
struct Mat3 {
  std::array<Vec3, 3> m{};

  static constexpr Mat3 identity() {
    return Mat3{{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
  }

  constexpr Vec3 operator*(const Vec3& v) const {
    Vec3 out{};
    for (int i = 0; i < 3; ++i) {
      out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    return out;
  }

  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 out{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
      }
    }
    return out;
  }

  constexpr double determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  // Adjugate inverse; callers guarantee a well-conditioned matrix.
  constexpr Mat3 inverse() const {
    const double inv_det = 1.0 / determinant();
    Mat3 r{};
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det;
    return r;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

// 8-bit gamma-encoded sRGB as stored in images and palette files.
struct SRGB8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend constexpr bool operator==(const SRGB8&, const SRGB8&) = default;
};

// Gamma-encoded sRGB with channels in [0,1].
struct UnitSRGB {
  double r = 0;
  double g = 0;
  double b = 0;
};

// Linear-light sRGB. Nominally [0,1]; may leave that range transiently
// (see in_gamut).
struct LinearRGB {
  double r = 0;
  double g = 0;
  double b = 0;
  constexpr Vec3 vec() const { return {r, g, b}; }
  static constexpr LinearRGB from(const Vec3& v) { return {v[0], v[1], v[2]}; }
  friend constexpr bool operator==(const LinearRGB&, const LinearRGB&) = default;
};

// Cone excitations.
struct LMS {
  double l = 0;
  double m = 0;
  double s = 0;
  constexpr Vec3 vec() const { return {l, m, s}; }
  static constexpr LMS from(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

// CIE 1976 L*a*b*, D65 white.
struct Lab {
  double L = 0;
  double a = 0;
  double b = 0;
  constexpr Vec3 vec() const { return {L, a, b}; }
  static constexpr Lab from(const Vec3& v) { return {v[0], v[1], v[2]}; }
  friend constexpr bool operator==(const Lab&, const Lab&) = default;
};

namespace matrices {

// Linear sRGB -> XYZ (D65), IEC 61966-2-1.
inline constexpr Mat3 kLinearToXyz{{Vec3{0.4124564, 0.3575761, 0.1804375},
                                    Vec3{0.2126729, 0.7151522, 0.0721750},
                                    Vec3{0.0193339, 0.1191920, 0.9503041}}};
inline constexpr Mat3 kXyzToLinear = kLinearToXyz.inverse();

// Reference white is the image of linear (1,1,1), so white maps to
// L*=100, a*=b*=0 without rounding slop.
inline constexpr Vec3 kWhiteXyz = kLinearToXyz * Vec3{1.0, 1.0, 1.0};

// Hunt-Pointer-Estevez XYZ -> LMS normalized to D65.
inline constexpr Mat3 kXyzToLmsHpe{{Vec3{0.4002400, 0.7076000, -0.0808100},
                                    Vec3{-0.2263000, 1.1653200, 0.0457000},
                                    Vec3{0.0000000, 0.0000000, 0.9182200}}};

// kXyzToLmsHpe * kLinearToXyz with each row rescaled so that linear white
// lands exactly on LMS (1,1,1). Computed offline in double precision; a unit
// test re-derives it from the two matrices above.
inline constexpr Mat3 kLinearToLms{
    {Vec3{0.3139977821630852, 0.6395082511435902, 0.04649396669332452},
     Vec3{0.15537847975885052, 0.7579176425180523, 0.08670387772309719},
     Vec3{0.017756582753965265, 0.10946796102238182, 0.8727754562236529}}};
inline constexpr Mat3 kLmsToLinear = kLinearToLms.inverse();

}  // namespace matrices

// Rec.709 luminance weights on linear channels.
inline constexpr Vec3 kLuminanceWeights{0.2126, 0.7152, 0.0722};

UnitSRGB decode(SRGB8 c);
// Rounds to nearest; channels are clamped to [0,1] first.
SRGB8 encode(UnitSRGB c);

// sRGB transfer functions. Both throw DomainError when a channel lies outside
// [0,1]; the message names the channel.
LinearRGB srgb_to_linear(UnitSRGB c);
UnitSRGB linear_to_srgb(LinearRGB c);

Lab linear_to_lab(LinearRGB c);
Lab xyz_to_lab(const Vec3& xyz);
// May return channels outside [0,1] for Lab colors outside the sRGB gamut.
LinearRGB lab_to_linear(Lab c);

LMS linear_to_lms(LinearRGB c);
LinearRGB lms_to_linear(LMS c);

// CIE76 color difference.
double delta_e(const Lab& a, const Lab& b);

double luminance(LinearRGB c);

bool in_gamut(LinearRGB c, double tolerance = 0.0);
LinearRGB clamp_gamut(LinearRGB c);

// Shorthands for the common 8-bit <-> perceptual paths.
LinearRGB to_linear(SRGB8 c);
SRGB8 to_srgb8(LinearRGB c);  // clamps
Lab to_lab(SRGB8 c);
SRGB8 lab_to_srgb8(Lab c);  // clamps

// "#RRGGBB" or "RRGGBB", case-insensitive. Throws ParameterError otherwise.
SRGB8 parse_hex(std::string_view text);
// Uppercase "#RRGGBB".
std::string to_hex(SRGB8 c);

}  // namespace cvd

#endif  // CVDKIT_COLOR_HPP_
