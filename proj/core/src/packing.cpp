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

#include "cvdkit/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"

namespace cvd {
namespace {

// Uniform grid over [-1,1]^2 bucketing circle indices by center.
class Grid {
 public:
  explicit Grid(double cell) : cell_(cell), n_(static_cast<int>(std::ceil(2.0 / cell))) {
    buckets_.resize(static_cast<std::size_t>(n_) * n_);
  }

  int index(double v) const { return std::clamp(static_cast<int>((v + 1.0) / cell_), 0, n_ - 1); }

  void insert(double x, double y, int id) { buckets_[index(y) * n_ + index(x)].push_back(id); }

  // Calls fn(id) for every circle whose center lies in the 3x3 block of
  // cells around (x, y); stops early once fn returns false.
  template <typename Fn>
  void visit(double x, double y, Fn&& fn) const {
    const int gx = index(x), gy = index(y);
    for (int j = std::max(0, gy - 1); j <= std::min(n_ - 1, gy + 1); ++j) {
      for (int i = std::max(0, gx - 1); i <= std::min(n_ - 1, gx + 1); ++i) {
        for (int id : buckets_[j * n_ + i]) {
          if (!fn(id)) return;
        }
      }
    }
  }

 private:
  double cell_;
  int n_;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace

Packing pack_disk(std::uint64_t seed, const PackingParams& p) {
  if (!(p.r_min > 0.0) || !(p.r_max >= p.r_min)) {
    throw ParameterError("packing radii must satisfy 0 < r_min <= r_max");
  }
  if (p.r_min > 1.0) throw ParameterError("r_min > 1: no circle fits in the unit disk");
  if (p.r_max > 0.1) throw ParameterError("r_max must not exceed 0.1");
  if (p.gap < 0.0) throw ParameterError("gap must be non-negative");
  if (p.max_failures < 1 || p.max_circles < 1) {
    throw ParameterError("max_failures and max_circles must be at least 1");
  }

  Rng rng(seed);
  Packing out;
  // A neighbour can only constrain a dart if its center is within
  // 2*r_max + gap, i.e. one grid cell.
  Grid grid(2.0 * p.r_max + p.gap);
  int failures = 0;
  double area = 0.0;

  while (failures < p.max_failures && static_cast<int>(out.circles.size()) < p.max_circles) {
    double radius = rng.uniform(p.r_min, p.r_max);
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    radius = std::min(radius, 1.0 - std::sqrt(x * x + y * y));
    if (radius >= p.r_min) {
      grid.visit(x, y, [&](int id) {
        const Circle& c = out.circles[id];
        const double dx = x - c.cx, dy = y - c.cy;
        const double reach = radius + c.radius + p.gap;
        const double d2 = dx * dx + dy * dy;
        if (d2 < reach * reach) radius = std::sqrt(d2) - c.radius - p.gap;
        return radius >= p.r_min;
      });
    }
    if (radius < p.r_min) {
      ++failures;
      continue;
    }
    failures = 0;
    grid.insert(x, y, static_cast<int>(out.circles.size()));
    out.circles.push_back({x, y, radius, {}});
    area += radius * radius;
  }
  out.fill_fraction = area;  // (pi * sum r^2) / (pi * 1^2)
  return out;
}

}  // namespace cvd
