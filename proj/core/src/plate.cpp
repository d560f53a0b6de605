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

#include "cvdkit/plate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"

namespace cvd {
namespace {

// Margins kept between the search acceptance region and the validation
// thresholds: 8-bit rounding of jittered circles moves the population means
// by a few hundredths.
constexpr double kNormalSlack = 0.5;
constexpr double kVanishSlack = 0.5;
constexpr double kMaxPairLightnessGap = 1.5;
// Lightness headroom both colors need so jittered circles stay in gamut.
constexpr double kJitterHeadroom = kJitterL + 1.0;

struct Candidate {
  SRGB8 figure;
  SRGB8 ground;
  Lab figure_lab;
  Lab ground_lab;
};

double simulated_de(SRGB8 a, SRGB8 b, const CVDProfile& profile) {
  return delta_e(linear_to_lab(simulate(to_linear(a), profile)),
                 linear_to_lab(simulate(to_linear(b), profile)));
}

bool jitter_safe(const Lab& c) {
  return in_gamut(lab_to_linear({c.L - kJitterHeadroom, c.a, c.b})) &&
         in_gamut(lab_to_linear({c.L + kJitterHeadroom, c.a, c.b}));
}

// Unit Lab direction along which colors near `center` are confused by a
// full dichromat of `kind`: a step along the missing cone axis.
Vec3 confusion_direction(const Lab& center, CVDKind kind) {
  const int missing = kind == CVDKind::kProtan ? 0 : kind == CVDKind::kDeutan ? 1 : 2;
  Vec3 lms = linear_to_lms(lab_to_linear(center)).vec();
  lms[missing] += 1e-4;
  const Lab moved = linear_to_lab(lms_to_linear(LMS::from(lms)));
  Vec3 d{moved.L - center.L, moved.a - center.a, moved.b - center.b};
  const double n = std::hypot(d[0], d[1], d[2]);
  for (double& v : d) v /= n;
  return d;
}

Vec3 normalized(Vec3 v) {
  const double n = std::hypot(v[0], v[1], v[2]);
  for (double& x : v) x /= n;
  return v;
}

std::optional<Lab> sample_ground(Rng& rng) {
  const Lab c{rng.uniform(38.0, 78.0), rng.uniform(-55.0, 55.0), rng.uniform(-55.0, 55.0)};
  if (!in_gamut(lab_to_linear(c)) || !jitter_safe(c)) return std::nullopt;
  return c;
}

// Places a figure color at distance `t` from `ground` along `dir`, quantizes
// both and checks the constraints every plate pair shares.
std::optional<Candidate> make_candidate(const Lab& ground, const Vec3& dir, double t) {
  const Lab fig{ground.L + t * dir[0], ground.a + t * dir[1], ground.b + t * dir[2]};
  if (!in_gamut(lab_to_linear(fig))) return std::nullopt;
  Candidate c;
  c.figure = lab_to_srgb8(fig);
  c.ground = lab_to_srgb8(ground);
  c.figure_lab = to_lab(c.figure);
  c.ground_lab = to_lab(c.ground);
  if (std::abs(c.figure_lab.L - c.ground_lab.L) > kMaxPairLightnessGap) return std::nullopt;
  if (delta_e(c.figure_lab, c.ground_lab) < kHighDeltaE + kNormalSlack) return std::nullopt;
  if (!jitter_safe(c.figure_lab) || !jitter_safe(c.ground_lab)) return std::nullopt;
  return c;
}

Vec3 perturbed_confusion(const Lab& ground, CVDKind kind, Rng& rng, double spread) {
  Vec3 dir = confusion_direction(ground, kind);
  dir[0] *= rng.uniform();
  for (double& v : dir) v += rng.uniform(-spread, spread);
  dir = normalized(dir);
  if (rng.below(2) == 1) {
    for (double& v : dir) v = -v;
  }
  return dir;
}

double vanish_upper(double difficulty) {
  return std::min(vanishing_limit(difficulty) - kVanishSlack, kVisibilityThreshold - 1.0);
}

ColorPairCertificate certify(const Candidate& c, const CVDProfile& profile, double de_sim) {
  return {c.figure, c.ground, delta_e(c.figure_lab, c.ground_lab), de_sim, profile};
}

std::string describe(const std::optional<ColorPairCertificate>& best) {
  if (!best) return "no in-gamut candidate";
  char buf[160];
  std::snprintf(buf, sizeof buf, "best candidate %s/%s de_normal=%.3f de_simulated=%.3f",
                to_hex(best->figure).c_str(), to_hex(best->ground).c_str(), best->de_normal,
                best->de_simulated);
  return buf;
}

void check_difficulty(double difficulty) {
  if (!(difficulty >= 0.0 && difficulty <= 1.0)) throw ParameterError("difficulty outside [0,1]");
}

}  // namespace

std::string_view to_string(PlateKind kind) {
  switch (kind) {
    case PlateKind::kDemo:
      return "demo";
    case PlateKind::kVanishing:
      return "vanishing";
    case PlateKind::kDiagnostic:
      return "diagnostic";
  }
  return "demo";
}

std::optional<PlateKind> parse_plate_kind(std::string_view name) {
  for (PlateKind k : {PlateKind::kDemo, PlateKind::kVanishing, PlateKind::kDiagnostic}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

void PlateDesign::validate() const {
  check_difficulty(difficulty);
  switch (kind) {
    case PlateKind::kVanishing:
      if (!target || !is_dichromat_kind(*target)) {
        throw ParameterError("vanishing plates need a dichromat target");
      }
      break;
    case PlateKind::kDemo:
    case PlateKind::kDiagnostic:
      if (target) throw ParameterError("demo and diagnostic plates take no target");
      break;
  }
}

std::string IshiharaPlate::digits() const {
  std::string s;
  for (const Glyph& g : glyphs) s.push_back(g.digit);
  return s;
}

ColorPairCertificate recertify(const ColorPairCertificate& cert) {
  ColorPairCertificate out = cert;
  out.de_normal = delta_e(to_lab(cert.figure), to_lab(cert.ground));
  out.de_simulated = simulated_de(cert.figure, cert.ground, cert.profile);
  return out;
}

ColorPairCertificate pick_vanishing_pair(const CVDProfile& target, double difficulty,
                                         std::uint64_t seed, int max_samples) {
  if (!is_dichromat_kind(target.kind()) || target.severity() != 1.0) {
    throw ParameterError("vanishing pairs target a full dichromat");
  }
  check_difficulty(difficulty);
  const double hi = vanish_upper(difficulty);
  const double lo = difficulty > 0.0 ? 0.5 * hi : 0.0;

  Rng rng(seed);
  std::optional<ColorPairCertificate> best;
  double best_miss = std::numeric_limits<double>::infinity();
  for (int i = 0; i < max_samples; ++i) {
    const auto ground = sample_ground(rng);
    if (!ground) continue;
    const Vec3 dir = perturbed_confusion(*ground, target.kind(), rng, 0.12);
    const double t = rng.uniform(kHighDeltaE + kNormalSlack, kHighDeltaE + 15.0);
    const auto cand = make_candidate(*ground, dir, t);
    if (!cand) continue;
    const double de_sim = simulated_de(cand->figure, cand->ground, target);
    const ColorPairCertificate cert = certify(*cand, target, de_sim);
    if (de_sim >= lo && de_sim <= hi) return cert;
    const double miss = de_sim > hi ? de_sim - hi : lo - de_sim;
    if (miss < best_miss) {
      best_miss = miss;
      best = cert;
    }
  }
  throw GenerationError("vanishing pair search for " + std::string(to_string(target.kind())) +
                        " exhausted " + std::to_string(max_samples) + " samples; " +
                        describe(best));
}

DiagnosticPairs pick_diagnostic_pairs(double difficulty, std::uint64_t seed, int max_samples) {
  check_difficulty(difficulty);
  const double hi = vanish_upper(difficulty);
  const double cross_min = kVisibilityThreshold + kVisibleMargin + kVanishSlack;
  const CVDProfile protan = CVDProfile::full(CVDKind::kProtan);
  const CVDProfile deutan = CVDProfile::full(CVDKind::kDeutan);
  constexpr int kDirectionsPerGround = 40;

  Rng rng(seed);
  int used = 0;
  while (used < max_samples) {
    const auto ground = sample_ground(rng);
    ++used;
    if (!ground) continue;
    std::optional<ColorPairCertificate> found[2];
    for (int k = 0; k < 2; ++k) {
      const CVDProfile& vanish = k == 0 ? protan : deutan;
      const CVDProfile& keep = k == 0 ? deutan : protan;
      for (int j = 0; j < kDirectionsPerGround && used < max_samples; ++j, ++used) {
        const Vec3 dir = perturbed_confusion(*ground, vanish.kind(), rng, 0.08);
        const double t = rng.uniform(kHighDeltaE + kNormalSlack, 75.0);
        const auto cand = make_candidate(*ground, dir, t);
        if (!cand) continue;
        const double de_vanish = simulated_de(cand->figure, cand->ground, vanish);
        if (de_vanish > hi) continue;
        if (simulated_de(cand->figure, cand->ground, keep) < cross_min) continue;
        found[k] = certify(*cand, vanish, de_vanish);
        break;
      }
      if (!found[k]) break;
    }
    if (found[0] && found[1]) return {*found[0], *found[1]};
  }
  throw GenerationError("diagnostic pair search exhausted " + std::to_string(max_samples) +
                        " samples");
}

ColorPairCertificate pick_demo_pair(std::uint64_t seed, int samples) {
  Rng rng(seed);
  std::optional<ColorPairCertificate> best;
  for (int i = 0; i < samples; ++i) {
    const auto ground = sample_ground(rng);
    if (!ground) continue;
    const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const Vec3 dir = normalized({rng.uniform(-0.03, 0.03), std::cos(angle), std::sin(angle)});
    const auto cand = make_candidate(*ground, dir, rng.uniform(kHighDeltaE + kNormalSlack, 50.0));
    if (!cand) continue;
    double worst = std::numeric_limits<double>::infinity();
    CVDKind worst_kind = CVDKind::kProtan;
    for (CVDKind k : {CVDKind::kProtan, CVDKind::kDeutan, CVDKind::kTritan}) {
      const double d = simulated_de(cand->figure, cand->ground, CVDProfile::full(k));
      if (d < worst) {
        worst = d;
        worst_kind = k;
      }
    }
    if (!best || worst > best->de_simulated) {
      best = certify(*cand, CVDProfile::full(worst_kind), worst);
    }
  }
  if (!best || best->de_simulated < kVisibilityThreshold + kVisibleMargin + kVanishSlack) {
    throw GenerationError("demo pair search found no pair visible to every dichromat; " +
                          describe(best));
  }
  return *best;
}

std::vector<int> assign_circles(const IshiharaPlate& plate) {
  std::vector<GlyphMask> masks;
  masks.reserve(plate.glyphs.size());
  for (const Glyph& g : plate.glyphs) masks.push_back(glyph_mask(g.digit, g.placement));
  std::vector<int> owner(plate.circles.size(), -1);
  for (std::size_t i = 0; i < plate.circles.size(); ++i) {
    for (std::size_t g = 0; g < masks.size(); ++g) {
      if (masks[g].contains(plate.circles[i].cx, plate.circles[i].cy)) {
        owner[i] = static_cast<int>(g);
        break;
      }
    }
  }
  return owner;
}

std::vector<GlyphStats> glyph_stats(const IshiharaPlate& plate) {
  const std::vector<int> owner = assign_circles(plate);
  const std::size_t n = plate.glyphs.size();
  std::vector<Vec3> fig_sum(n, Vec3{0, 0, 0});
  std::vector<int> fig_count(n, 0);
  Vec3 ground_sum{0, 0, 0};
  int ground_count = 0;
  for (std::size_t i = 0; i < plate.circles.size(); ++i) {
    const Vec3 lab = to_lab(plate.circles[i].color).vec();
    Vec3& acc = owner[i] < 0 ? ground_sum : fig_sum[owner[i]];
    for (int k = 0; k < 3; ++k) acc[k] += lab[k];
    ++(owner[i] < 0 ? ground_count : fig_count[owner[i]]);
  }
  auto mean = [](const Vec3& s, int count) {
    if (count == 0) return Lab{};
    return Lab{s[0] / count, s[1] / count, s[2] / count};
  };
  std::vector<GlyphStats> out(n);
  const Lab ground = mean(ground_sum, ground_count);
  for (std::size_t g = 0; g < n; ++g) {
    out[g].mean_figure = mean(fig_sum[g], fig_count[g]);
    out[g].mean_ground = ground;
    out[g].lightness_gap = out[g].mean_figure.L - ground.L;
    out[g].figure_count = fig_count[g];
  }
  return out;
}

std::vector<double> glyph_contrast(const std::vector<GlyphStats>& stats, const CVDProfile& profile) {
  std::vector<double> out;
  out.reserve(stats.size());
  for (const GlyphStats& s : stats) {
    if (s.figure_count == 0) {
      out.push_back(0.0);
      continue;
    }
    out.push_back(delta_e(linear_to_lab(simulate(lab_to_linear(s.mean_figure), profile)),
                          linear_to_lab(simulate(lab_to_linear(s.mean_ground), profile))));
  }
  return out;
}

std::vector<double> glyph_contrast(const IshiharaPlate& plate, const CVDProfile& profile) {
  return glyph_contrast(glyph_stats(plate), profile);
}

namespace {

std::string visible_from(const IshiharaPlate& plate, const std::vector<double>& contrast) {
  std::string out;
  for (std::size_t g = 0; g < plate.glyphs.size(); ++g) {
    if (contrast[g] >= kVisibilityThreshold) out.push_back(plate.glyphs[g].digit);
  }
  return out;
}

}  // namespace

std::string visible_digits(const IshiharaPlate& plate, const CVDProfile& profile) {
  return visible_from(plate, glyph_contrast(plate, profile));
}

std::map<CVDKind, std::string> design_answers(const PlateDesign& design, std::string_view digits) {
  const std::string all(digits);
  std::map<CVDKind, std::string> out;
  switch (design.kind) {
    case PlateKind::kDemo:
      for (CVDKind k : kViewerClasses) out[k] = all;
      break;
    case PlateKind::kVanishing:
      out[CVDKind::kNormal] = all;
      out[*design.target] = "";
      break;
    case PlateKind::kDiagnostic:
      out[CVDKind::kNormal] = all;
      out[CVDKind::kProtan] = all.substr(1, 1);
      out[CVDKind::kDeutan] = all.substr(0, 1);
      break;
  }
  return out;
}

IshiharaPlate compose_plate(const PlateDesign& design, std::string_view digits, std::uint64_t seed,
                            std::string id, const PlateOptions& options) {
  design.validate();
  if (digits.empty()) throw ParameterError("a plate needs at least one digit");
  if (design.kind == PlateKind::kDiagnostic && digits.size() != 2) {
    throw ParameterError("diagnostic plates carry exactly two digits");
  }
  const std::vector<GlyphPlacement> places = layout_digits(static_cast<int>(digits.size()));
  const auto expected = design_answers(design, digits);

  Rng master(seed);
  std::string last_problem;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    IshiharaPlate plate;
    plate.id = id;
    plate.design = design;
    plate.seed = seed;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      glyph_mask(digits[i], places[i]);  // validates the digit and placement
      plate.glyphs.push_back({digits[i], places[i]});
    }

    const std::uint64_t pack_seed = master.fork();
    const std::uint64_t pair_seed = master.fork();
    Rng jitter(master.fork());

    plate.circles = pack_disk(pack_seed, options.packing).circles;

    // One (figure, ground) pair per glyph; every pair shares the ground.
    std::vector<SRGB8> figure_colors;
    SRGB8 ground_color{};
    switch (design.kind) {
      case PlateKind::kDemo: {
        const auto cert = pick_demo_pair(pair_seed);
        plate.certificates.push_back(cert);
        figure_colors.assign(digits.size(), cert.figure);
        ground_color = cert.ground;
        break;
      }
      case PlateKind::kVanishing: {
        const auto cert = pick_vanishing_pair(CVDProfile::full(*design.target), design.difficulty,
                                              pair_seed, options.max_pair_samples);
        plate.certificates.push_back(cert);
        figure_colors.assign(digits.size(), cert.figure);
        ground_color = cert.ground;
        break;
      }
      case PlateKind::kDiagnostic: {
        const auto pairs =
            pick_diagnostic_pairs(design.difficulty, pair_seed, options.max_pair_samples);
        plate.certificates = {pairs.protan_vanishing, pairs.deutan_vanishing};
        figure_colors = {pairs.protan_vanishing.figure, pairs.deutan_vanishing.figure};
        ground_color = pairs.protan_vanishing.ground;
        break;
      }
    }

    // Lightness jitter: i.i.d. uniform per circle, then centered within each
    // population so it cannot shift a population's mean lightness.
    const std::vector<int> owner = assign_circles(plate);
    const int populations = static_cast<int>(digits.size()) + 1;
    std::vector<double> offsets(plate.circles.size());
    std::vector<double> sums(populations, 0.0);
    std::vector<int> counts(populations, 0);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      offsets[i] = jitter.uniform(-kJitterL, kJitterL);
      sums[owner[i] + 1] += offsets[i];
      ++counts[owner[i] + 1];
    }
    bool sparse = false;
    for (int g = 1; g < populations; ++g) sparse |= counts[g] < options.min_circles_per_glyph;
    if (sparse) {
      last_problem = "glyph covered by too few circles";
      continue;
    }
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const int p = owner[i] + 1;
      const Lab base = to_lab(p == 0 ? ground_color : figure_colors[p - 1]);
      const double dl = offsets[i] - sums[p] / counts[p];
      plate.circles[i].color = lab_to_srgb8({base.L + dl, base.a, base.b});
    }

    const std::vector<GlyphStats> stats = glyph_stats(plate);
    bool ok = true;
    for (CVDKind k : kViewerClasses) {
      plate.answer_key[k] = visible_from(plate, glyph_contrast(stats, CVDProfile::full(k)));
    }
    for (const auto& [k, answer] : expected) {
      if (plate.answer_key[k] != answer) {
        ok = false;
        last_problem = "composed plate disagrees with its design for " + std::string(to_string(k));
      }
    }
    for (const GlyphStats& s : stats) {
      if (std::abs(s.lightness_gap) > kLeakLimit) {
        ok = false;
        last_problem = "lightness leak";
      }
    }
    if (ok) return plate;
  }
  throw GenerationError("could not compose plate after " + std::to_string(options.max_attempts) +
                        " attempts: " + last_problem);
}

std::string render_svg(const IshiharaPlate& plate) {
  std::string out;
  out.reserve(64 * plate.circles.size() + 256);
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" "
      "viewBox=\"-1.05 -1.05 2.1 2.1\">\n"
      "<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"#F2F2F2\"/>\n";
  char buf[128];
  for (const Circle& c : plate.circles) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.5f\" cy=\"%.5f\" r=\"%.5f\" fill=\"%s\"/>\n",
                  c.cx, c.cy, c.radius, to_hex(c.color).c_str());
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

PlateReport validate_plate(const IshiharaPlate& plate, const PackingParams& packing) {
  PlateReport report;
  auto fail = [&report](std::string msg) { report.failures.push_back(std::move(msg)); };
  char buf[200];

  try {
    plate.design.validate();
  } catch (const ParameterError& e) {
    fail(e.what());
    return report;
  }

  // Geometry.
  for (std::size_t i = 0; i < plate.circles.size(); ++i) {
    const Circle& a = plate.circles[i];
    if (std::hypot(a.cx, a.cy) + a.radius > 1.0 + 1e-12) {
      fail("circle " + std::to_string(i) + " leaves the unit disk");
    }
    for (std::size_t j = i + 1; j < plate.circles.size(); ++j) {
      const Circle& b = plate.circles[j];
      const double reach = a.radius + b.radius + packing.gap;
      const double dx = a.cx - b.cx, dy = a.cy - b.cy;
      if (dx * dx + dy * dy < reach * reach - 1e-12) {
        fail("circles " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }

  const std::vector<GlyphStats> stats = glyph_stats(plate);
  const std::vector<double> normal = glyph_contrast(stats, CVDProfile::normal());
  std::map<CVDKind, std::vector<double>> sim;
  for (CVDKind k : {CVDKind::kProtan, CVDKind::kDeutan, CVDKind::kTritan}) {
    sim[k] = glyph_contrast(stats, CVDProfile::full(k));
  }
  const double visible_min = kVisibilityThreshold + kVisibleMargin;
  const double low = vanishing_limit(plate.design.difficulty);

  for (std::size_t g = 0; g < plate.glyphs.size(); ++g) {
    GlyphReport r;
    r.digit = plate.glyphs[g].digit;
    r.de_normal = normal[g];
    for (const auto& [k, v] : sim) r.de_simulated[k] = v[g];
    r.lightness_gap = stats[g].lightness_gap;
    report.glyphs.push_back(r);

    const std::string tag = "glyph " + std::to_string(g) + " ('" + r.digit + "'): ";
    if (r.de_normal < kHighDeltaE) {
      std::snprintf(buf, sizeof buf, "normal-vision difference %.3f below %.1f", r.de_normal,
                    kHighDeltaE);
      fail(tag + buf);
    }
    if (std::abs(r.lightness_gap) > kLeakLimit) {
      std::snprintf(buf, sizeof buf, "lightness leak %.3f exceeds %.1f", r.lightness_gap,
                    kLeakLimit);
      fail(tag + buf);
    }
    auto require_vanish = [&](CVDKind k) {
      if (r.de_simulated[k] > low) {
        std::snprintf(buf, sizeof buf, "%s difference %.3f above %.3f",
                      std::string(to_string(k)).c_str(), r.de_simulated[k], low);
        fail(tag + buf);
      }
    };
    auto require_visible = [&](CVDKind k) {
      if (r.de_simulated[k] < visible_min) {
        std::snprintf(buf, sizeof buf, "%s difference %.3f below %.1f",
                      std::string(to_string(k)).c_str(), r.de_simulated[k], visible_min);
        fail(tag + buf);
      }
    };
    switch (plate.design.kind) {
      case PlateKind::kDemo:
        for (const auto& [k, v] : sim) require_visible(k);
        break;
      case PlateKind::kVanishing:
        require_vanish(*plate.design.target);
        break;
      case PlateKind::kDiagnostic:
        require_vanish(g == 0 ? CVDKind::kProtan : CVDKind::kDeutan);
        require_visible(g == 0 ? CVDKind::kDeutan : CVDKind::kProtan);
        break;
    }
  }

  for (std::size_t i = 0; i < plate.certificates.size(); ++i) {
    const ColorPairCertificate& c = plate.certificates[i];
    const ColorPairCertificate again = recertify(c);
    const std::string tag = "certificate " + std::to_string(i) + ": ";
    if (std::abs(again.de_normal - c.de_normal) > 1e-9 ||
        std::abs(again.de_simulated - c.de_simulated) > 1e-9) {
      fail(tag + "stored differences do not match its colors");
    }
    if (c.de_normal < kHighDeltaE) fail(tag + "normal-vision difference below threshold");
    if (plate.design.kind != PlateKind::kDemo && c.de_simulated > low) {
      fail(tag + "simulated difference above the vanishing limit");
    }
  }

  const auto expected = design_answers(plate.design, plate.digits());
  for (CVDKind k : kViewerClasses) {
    const auto it = plate.answer_key.find(k);
    if (it == plate.answer_key.end()) {
      fail("answer key lacks " + std::string(to_string(k)));
      continue;
    }
    const std::string seen = visible_from(plate, k == CVDKind::kNormal ? normal : sim[k]);
    if (it->second != seen) {
      fail("answer key for " + std::string(to_string(k)) + " is '" + it->second +
           "' but simulation sees '" + seen + "'");
    }
    const auto e = expected.find(k);
    if (e != expected.end() && e->second != it->second) {
      fail("answer key for " + std::string(to_string(k)) + " contradicts the design");
    }
  }

  report.pass = report.failures.empty();
  return report;
}

}  // namespace cvd
