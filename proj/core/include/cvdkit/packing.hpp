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

#ifndef CVDKIT_PACKING_HPP_
#define CVDKIT_PACKING_HPP_

#include <cstdint>
#include <vector>

#include "cvdkit/color.hpp"

namespace cvd {

// A dot on a plate, in unit-disk coordinates (origin at the plate center,
// y pointing down as in SVG).
struct Circle {
  double cx = 0;
  double cy = 0;
  double radius = 0;
  SRGB8 color{};
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct PackingParams {
  double r_min = 0.012;
  double r_max = 0.035;
  double gap = 0.004;  // minimum clearance between neighbouring circles
  int max_circles = 3000;
  int max_failures = 4000;  // consecutive rejected darts before stopping
};

struct Packing {
  std::vector<Circle> circles;
  double fill_fraction = 0;  // covered area / unit disk area
};

// Greedy dart throwing inside the unit disk. Each dart draws a center and a
// target radius; the radius shrinks to whatever clearance the neighbours
// leave and the dart is rejected if that falls below r_min. Deterministic for
// a fixed (seed, params). Throws ParameterError on invalid parameters.
Packing pack_disk(std::uint64_t seed, const PackingParams& params = {});

}  // namespace cvd

#endif  // CVDKIT_PACKING_HPP_
