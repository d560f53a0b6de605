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

#include "cvdkit/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

Lab simulated_lab(const Lab& c, const CVDProfile& profile) {
  const LinearRGB lin = lab_to_linear(c);
  if (profile.is_identity() && in_gamut(lin)) return c;  // skip the round trip
  return linear_to_lab(simulate(lin, profile));
}

double gamut_violation(const Lab& c) {
  const LinearRGB l = lab_to_linear(c);
  double g = 0.0;
  constexpr double kRoundoff = 1e-12;  // Lab round trips of gamut corners
  for (double v : {l.r, l.g, l.b}) {
    if (v < -kRoundoff) g += v * v;
    if (v > 1.0 + kRoundoff) g += (v - 1.0) * (v - 1.0);
  }
  return g;
}

void check_roles_match(const Palette& a, const Palette& b) {
  if (a.entries.size() != b.entries.size()) {
    throw ValidationError("candidate and original palettes differ in size");
  }
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].role != b.entries[i].role) {
      throw ValidationError("role mismatch at entry " + std::to_string(i) + ": '" +
                            a.entries[i].role + "' vs '" + b.entries[i].role + "'");
    }
  }
}

std::vector<Lab> labs_of(const Palette& p) {
  std::vector<Lab> out;
  out.reserve(p.entries.size());
  for (const PaletteEntry& e : p.entries) out.push_back(to_lab(e.color));
  return out;
}

// Central differences of `f` at `x` with step h, over every coordinate.
template <typename F>
std::vector<double> fd_gradient(const F& f, std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double saved = x[k];
    x[k] = saved + h;
    const double up = f(x);
    x[k] = saved - h;
    const double down = f(x);
    x[k] = saved;
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

double norm2(const std::vector<double>& v) {
  std::vector<double> sq;
  sq.reserve(v.size());
  for (double x : v) sq.push_back(x * x);
  return std::sqrt(sorted_sum(sq));
}

}  // namespace

void Palette::validate() const {
  if (entries.size() < 2) throw ValidationError("palette '" + name + "' needs at least two entries");
  std::set<std::string> seen;
  for (const PaletteEntry& e : entries) {
    if (e.role.empty()) throw ValidationError("palette '" + name + "' has an empty role name");
    if (!seen.insert(e.role).second) {
      throw ValidationError("palette '" + name + "' repeats role '" + e.role + "'");
    }
  }
}

double score_palette(const Palette& palette, const CVDProfile& profile) {
  palette.validate();
  std::vector<Lab> sim;
  sim.reserve(palette.entries.size());
  for (const PaletteEntry& e : palette.entries) {
    sim.push_back(linear_to_lab(simulate(to_linear(e.color), profile)));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sim.size(); ++i) {
    for (std::size_t j = i + 1; j < sim.size(); ++j) best = std::min(best, delta_e(sim[i], sim[j]));
  }
  return best;
}

SchemeChoice select_scheme(std::span<const Palette> schemes, const CVDProfile& profile) {
  if (schemes.empty()) throw ValidationError("no schemes to choose from");
  SchemeChoice best{0, score_palette(schemes[0], profile)};
  for (std::size_t i = 1; i < schemes.size(); ++i) {
    const double s = score_palette(schemes[i], profile);
    if (s > best.score) best = {i, s};
  }
  return best;
}

PaletteObjective::PaletteObjective(const Palette& original, const CVDProfile& profile,
                                   ObjectiveWeights weights)
    : original_(labs_of(original)), profile_(profile), weights_(weights) {
  original.validate();
  for (std::size_t i = 0; i < original_.size(); ++i) {
    for (std::size_t j = i + 1; j < original_.size(); ++j) {
      normal_distance_.push_back(delta_e(original_[i], original_[j]));
    }
  }
}

double PaletteObjective::operator()(std::span<const Lab> candidate) const {
  const std::size_t n = original_.size();
  std::vector<Lab> sim;
  sim.reserve(n);
  for (const Lab& c : candidate) sim.push_back(simulated_lab(c, profile_));

  std::vector<double> terms;
  terms.reserve(n * (n - 1) / 2 + 2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double diff = delta_e(sim[i], sim[j]) - normal_distance_[k];
      terms.push_back(diff * diff);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double shift = delta_e(candidate[i], original_[i]);
    terms.push_back(weights_.fidelity * shift * shift);
    terms.push_back(weights_.gamut * gamut_violation(candidate[i]));
  }
  return sorted_sum(terms);
}

double objective(const Palette& candidate, const Palette& original, const CVDProfile& profile,
                 double fidelity, double gamut) {
  check_roles_match(candidate, original);
  if (fidelity < 0.0 || gamut < 0.0) throw ValidationError("objective weights must be non-negative");
  const PaletteObjective f(original, profile, {fidelity, gamut});
  const std::vector<Lab> c = labs_of(candidate);
  return f(c);
}

AdaptationResult optimize_palette(const Palette& original, const CVDProfile& profile,
                                  const OptimizeOptions& options) {
  original.validate();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < original.entries.size(); ++i) {
    if (!original.entries[i].pinned) free.push_back(i);
  }
  if (free.empty()) throw ValidationError("every palette entry is pinned; nothing to optimize");

  const PaletteObjective f(original, profile, {options.fidelity, options.gamut});
  AdaptationResult result;
  result.adapted = original;
  result.initial_score = score_palette(original, profile);
  const std::vector<Lab> start(f.original().begin(), f.original().end());
  const double e0 = f(start);
  result.objective_trace.push_back(e0);
  if (profile.kind() == CVDKind::kNormal) {
    result.final_score = result.initial_score;
    return result;
  }

  // Decision vector: Lab triples of the free entries.
  std::vector<double> x;
  for (std::size_t i : free) {
    const Vec3 v = start[i].vec();
    x.insert(x.end(), v.begin(), v.end());
  }
  std::vector<Lab> scratch = start;
  auto energy = [&](const std::vector<double>& v) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      scratch[free[k]] = {v[3 * k], v[3 * k + 1], v[3 * k + 2]};
    }
    return f(scratch);
  };

  double e = e0;
  for (int it = 0; it < options.max_iters && e > 0.0; ++it) {
    const std::vector<double> g = fd_gradient(energy, x, options.fd_step);
    const double gn = norm2(g);
    if (!(gn > 0.0)) break;

    bool accepted = false;
    std::vector<double> trial(x.size());
    double e_trial = e;
    for (double alpha = options.step; alpha >= options.min_step; alpha *= 0.5) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - alpha * g[k] / gn;
      e_trial = energy(trial);
      if (e_trial < e) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    const double rel = (e - e_trial) / e;
    x = trial;
    e = e_trial;
    result.objective_trace.push_back(e);
    ++result.iterations;
    if (rel < options.tol) break;
  }

  for (std::size_t k = 0; k < free.size(); ++k) {
    result.adapted.entries[free[k]].color = lab_to_srgb8({x[3 * k], x[3 * k + 1], x[3 * k + 2]});
  }
  if (f(labs_of(result.adapted)) > e0) result.adapted = original;
  result.final_score = score_palette(result.adapted, profile);
  return result;
}

GradientCheck gradient_check(std::span<const Lab> candidate, const Palette& original,
                             const CVDProfile& profile, double fidelity, double gamut, double h) {
  if (candidate.size() != original.entries.size()) {
    throw ValidationError("candidate and original palettes differ in size");
  }
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  // Steps of h in Lab move linear RGB by well under this margin.
  constexpr double kMargin = 5e-3;
  for (const Lab& c : candidate) {
    const LinearRGB lin = lab_to_linear(c);
    const LinearRGB sim = simulate_unclamped(lin, profile);
    for (double v : {lin.r, lin.g, lin.b, sim.r, sim.g, sim.b}) {
      if (v < kMargin || v > 1.0 - kMargin) {
        throw ValidationError("gradient check needs a candidate strictly inside the gamut");
      }
    }
  }

  const PaletteObjective f(original, profile, {fidelity, gamut});
  std::vector<double> x;
  for (const Lab& c : candidate) {
    const Vec3 v = c.vec();
    x.insert(x.end(), v.begin(), v.end());
  }
  auto energy = [&](const std::vector<double>& v) {
    std::vector<Lab> labs;
    for (std::size_t k = 0; k < v.size(); k += 3) labs.push_back({v[k], v[k + 1], v[k + 2]});
    return f(labs);
  };

  const std::vector<double> g1 = fd_gradient(energy, x, h);
  const std::vector<double> g2 = fd_gradient(energy, x, h / 2);
  const std::vector<double> g4 = fd_gradient(energy, x, h / 4);

  double diff12 = 0.0, scale = 0.0;
  std::vector<double> d12(x.size()), d24(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    diff12 = std::max(diff12, std::abs(g1[k] - g2[k]));
    scale = std::max(scale, std::abs(g2[k]));
    d12[k] = g1[k] - g2[k];
    d24[k] = g2[k] - g4[k];
  }
  GradientCheck out;
  out.max_relative_error = scale > 0.0 ? diff12 / scale : diff12;
  const double denom = norm2(d24);
  out.richardson_factor = denom > 0.0 ? norm2(d12) / denom : std::numeric_limits<double>::quiet_NaN();
  out.gradient_norm = norm2(g4);
  return out;
}

}  // namespace cvd
