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

#include "cvdkit/simulate.hpp"

#include <cmath>

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

// Solves [p q; r s] x = rhs by Cramer's rule.
std::array<double, 2> solve2(double p, double q, double r, double s, double rhs0, double rhs1) {
  const double det = p * s - q * r;
  if (std::abs(det) < 1e-12) {
    throw ParameterError("singular anchor system while building dichromat projection");
  }
  return {(rhs0 * s - q * rhs1) / det, (p * rhs1 - rhs0 * r) / det};
}

}  // namespace

CVDProfile::CVDProfile(CVDKind kind, double severity) : kind_(kind), severity_(severity) {
  if (!std::isfinite(severity) || severity < 0.0 || severity > 1.0) {
    throw ParameterError("severity " + std::to_string(severity) + " outside [0,1]");
  }
  if (kind_ == CVDKind::kNormal) severity_ = 0.0;
}

std::string_view to_string(CVDKind kind) {
  switch (kind) {
    case CVDKind::kNormal:
      return "normal";
    case CVDKind::kProtan:
      return "protan";
    case CVDKind::kDeutan:
      return "deutan";
    case CVDKind::kTritan:
      return "tritan";
    case CVDKind::kAchromat:
      return "achromat";
  }
  return "normal";
}

std::optional<CVDKind> parse_cvd_kind(std::string_view name) {
  for (CVDKind k : {CVDKind::kNormal, CVDKind::kProtan, CVDKind::kDeutan, CVDKind::kTritan,
                    CVDKind::kAchromat}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_dichromat_kind(CVDKind kind) {
  return kind == CVDKind::kProtan || kind == CVDKind::kDeutan || kind == CVDKind::kTritan;
}

Mat3 build_projection(CVDKind kind) {
  if (!is_dichromat_kind(kind)) {
    throw ParameterError("no dichromat projection for kind " + std::string(to_string(kind)));
  }
  const Vec3 white = matrices::kLinearToLms * Vec3{1.0, 1.0, 1.0};
  const Vec3 anchor = kind == CVDKind::kTritan ? matrices::kLinearToLms * Vec3{1.0, 0.0, 0.0}
                                               : matrices::kLinearToLms * Vec3{0.0, 0.0, 1.0};
  const int missing = kind == CVDKind::kProtan ? 0 : kind == CVDKind::kDeutan ? 1 : 2;
  const int k0 = missing == 0 ? 1 : 0;
  const int k1 = missing == 2 ? 1 : 2;

  const auto coef = solve2(white[k0], white[k1], anchor[k0], anchor[k1], white[missing],
                           anchor[missing]);
  Mat3 p = Mat3::identity();
  p.m[missing] = Vec3{0.0, 0.0, 0.0};
  p.m[missing][k0] = coef[0];
  p.m[missing][k1] = coef[1];
  return p;
}

const Mat3& dichromat_projection(CVDKind kind) {
  static const Mat3 protan = build_projection(CVDKind::kProtan);
  static const Mat3 deutan = build_projection(CVDKind::kDeutan);
  static const Mat3 tritan = build_projection(CVDKind::kTritan);
  switch (kind) {
    case CVDKind::kProtan:
      return protan;
    case CVDKind::kDeutan:
      return deutan;
    case CVDKind::kTritan:
      return tritan;
    default:
      throw ParameterError("no dichromat projection for kind " + std::string(to_string(kind)));
  }
}

Mat3 lms_simulation_matrix(const CVDProfile& profile) {
  if (profile.kind() == CVDKind::kNormal) return Mat3::identity();
  if (profile.kind() == CVDKind::kAchromat) {
    throw ParameterError("achromat simulation is not an LMS-space operator");
  }
  const Mat3& p = dichromat_projection(profile.kind());
  const double s = profile.severity();
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.m[i][j] = (1.0 - s) * (i == j ? 1.0 : 0.0) + s * p.m[i][j];
    }
  }
  return out;
}

LinearRGB simulate_unclamped(LinearRGB c, const CVDProfile& profile) {
  if (profile.is_identity()) return c;
  const double s = profile.severity();
  if (profile.kind() == CVDKind::kAchromat) {
    const double y = luminance(c);
    return {(1.0 - s) * c.r + s * y, (1.0 - s) * c.g + s * y, (1.0 - s) * c.b + s * y};
  }
  const Vec3 lms = matrices::kLinearToLms * c.vec();
  const Vec3 projected = dichromat_projection(profile.kind()) * lms;
  Vec3 mixed{};
  for (int i = 0; i < 3; ++i) mixed[i] = (1.0 - s) * lms[i] + s * projected[i];
  return LinearRGB::from(matrices::kLmsToLinear * mixed);
}

LinearRGB simulate(LinearRGB c, const CVDProfile& profile) {
  return clamp_gamut(simulate_unclamped(c, profile));
}

SRGB8 simulate(SRGB8 c, const CVDProfile& profile) {
  if (profile.is_identity()) return c;
  return to_srgb8(simulate(to_linear(c), profile));
}

}  // namespace cvd
