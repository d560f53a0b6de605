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

#ifndef CVDKIT_ADAPT_HPP_
#define CVDKIT_ADAPT_HPP_

#include <span>
#include <string>
#include <vector>

#include "cvdkit/color.hpp"
#include "cvdkit/simulate.hpp"

namespace cvd {

struct PaletteEntry {
  std::string role;
  SRGB8 color{};
  bool pinned = false;  // brand colors and the like; never moved
  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

struct Palette {
  std::string name;
  std::vector<PaletteEntry> entries;

  // Throws ValidationError for duplicate roles or fewer than two entries.
  void validate() const;
  friend bool operator==(const Palette&, const Palette&) = default;
};

// Smallest simulated CIE76 difference over all unordered pairs of entries.
double score_palette(const Palette& palette, const CVDProfile& profile);

struct SchemeChoice {
  std::size_t index = 0;
  double score = 0;
};

// Highest-scoring scheme; ties resolve to the lowest index.
SchemeChoice select_scheme(std::span<const Palette> schemes, const CVDProfile& profile);

struct ObjectiveWeights {
  double fidelity = 0.05;  // pull toward the original colors
  double gamut = 10.0;     // penalty on linear-RGB bound violations
};

// Recoloring energy for a candidate palette:
//   sum_{i<j} (sim_dE(c'_i, c'_j) - dE(c_i, c_j))^2
//   + fidelity * sum_i dE(c'_i, c_i)^2 + gamut * G(c')
// where G sums squared per-channel excursions of c' outside [0,1] in linear
// RGB. All sums are accumulated in sorted order so the value does not
// depend on entry order.
class PaletteObjective {
 public:
  // Throws ValidationError if the original palette is invalid.
  PaletteObjective(const Palette& original, const CVDProfile& profile, ObjectiveWeights weights);

  std::size_t size() const { return original_.size(); }
  std::span<const Lab> original() const { return original_; }

  double operator()(std::span<const Lab> candidate) const;

 private:
  std::vector<Lab> original_;
  std::vector<double> normal_distance_;  // packed upper triangle
  CVDProfile profile_;
  ObjectiveWeights weights_;
};

// Throws ValidationError when the two palettes' roles differ in name or order.
double objective(const Palette& candidate, const Palette& original, const CVDProfile& profile,
                 double fidelity, double gamut = ObjectiveWeights{}.gamut);

struct OptimizeOptions {
  double fidelity = 0.05;
  double gamut = 10.0;
  int max_iters = 500;
  double tol = 1e-6;        // stop once the relative decrease falls below this
  double step = 1.0;        // initial line-search step, Lab units
  double fd_step = 1e-3;    // central-difference step per Lab coordinate
  double min_step = 1e-8;   // backtracking floor
};

struct AdaptationResult {
  Palette adapted;
  std::vector<double> objective_trace;  // one value per accepted iterate, starting at the input
  int iterations = 0;
  double initial_score = 0;
  double final_score = 0;
};

// Gradient descent over the Lab coordinates of the unpinned entries,
// starting from the original colors. Normal profiles return the original
// untouched. If 8-bit quantization of the optimum scores worse on the
// objective than the input itself, the input is returned.
// Throws ValidationError for invalid palettes or when every entry is pinned.
AdaptationResult optimize_palette(const Palette& original, const CVDProfile& profile,
                                  const OptimizeOptions& options = {});

struct GradientCheck {
  double max_relative_error = 0;   // |g(h) - g(h/2)|_inf / |g(h/2)|_inf
  double richardson_factor = 0;    // |g(h) - g(h/2)| / |g(h/2) - g(h/4)|, ~4 for O(h^2)
  double gradient_norm = 0;        // |g(h/4)|_2
};

// Finite-difference self-check of the objective gradient over all
// coordinates of all entries. The candidate and its simulation must sit
// strictly inside the gamut so that no clamp is active (ValidationError
// otherwise).
GradientCheck gradient_check(std::span<const Lab> candidate, const Palette& original,
                             const CVDProfile& profile, double fidelity,
                             double gamut = ObjectiveWeights{}.gamut, double h = 1e-2);

}  // namespace cvd

#endif  // CVDKIT_ADAPT_HPP_
