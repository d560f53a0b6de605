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

#ifndef CVDKIT_SIMULATE_HPP_
#define CVDKIT_SIMULATE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "cvdkit/color.hpp"

namespace cvd {

enum class CVDKind { kNormal, kProtan, kDeutan, kTritan, kAchromat };

// A viewer's color vision. Severity 1 is the full dichromat (or monochromat);
// intermediate values model anomalous trichromacy by interpolation.
class CVDProfile {
 public:
  CVDProfile() = default;
  // Throws ParameterError if severity is outside [0,1] or not finite.
  // A Normal profile always carries severity 0.
  CVDProfile(CVDKind kind, double severity);

  static CVDProfile normal() { return {}; }
  static CVDProfile full(CVDKind kind) { return {kind, kind == CVDKind::kNormal ? 0.0 : 1.0}; }

  CVDKind kind() const { return kind_; }
  double severity() const { return severity_; }
  bool is_identity() const { return kind_ == CVDKind::kNormal || severity_ == 0.0; }

  friend bool operator==(const CVDProfile&, const CVDProfile&) = default;

 private:
  CVDKind kind_ = CVDKind::kNormal;
  double severity_ = 0.0;
};

std::string_view to_string(CVDKind kind);
// Accepts the lowercase names produced by to_string.
std::optional<CVDKind> parse_cvd_kind(std::string_view name);

bool is_dichromat_kind(CVDKind kind);

// Projection onto the plane of colors a dichromat of `kind` can distinguish,
// in LMS. Only the missing cone's row differs from the identity: it is
// rewritten as a combination of the two remaining cones chosen so that the
// LMS images of white and of an anchor primary (blue for protan/deutan, red
// for tritan) are fixed points. Throws ParameterError for non-dichromat kinds.
const Mat3& dichromat_projection(CVDKind kind);
// Recomputes the projection from scratch (dichromat_projection caches it).
Mat3 build_projection(CVDKind kind);

// The LMS-space operator (1-s)*I + s*P for a dichromat profile; identity for
// Normal. Throws ParameterError for Achromat.
Mat3 lms_simulation_matrix(const CVDProfile& profile);

// Simulated appearance without the final gamut clamp.
LinearRGB simulate_unclamped(LinearRGB c, const CVDProfile& profile);

// Simulated appearance, clamped to [0,1]. Identity profiles return the
// clamped input unchanged.
LinearRGB simulate(LinearRGB c, const CVDProfile& profile);

SRGB8 simulate(SRGB8 c, const CVDProfile& profile);

}  // namespace cvd

#endif  // CVDKIT_SIMULATE_HPP_
