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

#ifndef CVDKIT_PLATE_HPP_
#define CVDKIT_PLATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvdkit/color.hpp"
#include "cvdkit/glyph.hpp"
#include "cvdkit/packing.hpp"
#include "cvdkit/simulate.hpp"

namespace cvd {

// Plate color thresholds, in CIE76 units.
inline constexpr double kHighDeltaE = 30.0;   // figure/ground difference for normal vision
inline constexpr double kLeakLimit = 2.0;     // max |mean L*(figure) - mean L*(ground)|
inline constexpr double kJitterL = 6.0;       // per-circle lightness jitter amplitude
// A glyph is reported as seen when its simulated figure/ground difference
// reaches this value.
inline constexpr double kVisibilityThreshold = 10.0;
// Glyphs meant to stay visible to a dichromat must clear the threshold by
// this much.
inline constexpr double kVisibleMargin = 2.0;

// Upper bound on the simulated difference of a vanishing pair. Harder plates
// vanish less completely.
constexpr double vanishing_limit(double difficulty) { return 4.0 + 8.0 * difficulty; }

enum class PlateKind { kDemo, kVanishing, kDiagnostic };

std::string_view to_string(PlateKind kind);
std::optional<PlateKind> parse_plate_kind(std::string_view name);

struct PlateDesign {
  PlateKind kind = PlateKind::kDemo;
  // Dichromat kind the plate is built to fail; Vanishing only.
  std::optional<CVDKind> target;
  double difficulty = 0.0;

  // Throws ParameterError when the fields are inconsistent.
  void validate() const;
  friend bool operator==(const PlateDesign&, const PlateDesign&) = default;
};

struct ColorPairCertificate {
  SRGB8 figure{};
  SRGB8 ground{};
  double de_normal = 0;
  double de_simulated = 0;
  CVDProfile profile;
  friend bool operator==(const ColorPairCertificate&, const ColorPairCertificate&) = default;
};

// Viewer classes an answer key is written for.
inline constexpr std::array<CVDKind, 4> kViewerClasses{CVDKind::kNormal, CVDKind::kProtan,
                                                       CVDKind::kDeutan, CVDKind::kTritan};

struct IshiharaPlate {
  std::string id;
  PlateDesign design;
  std::vector<Glyph> glyphs;
  std::vector<Circle> circles;
  std::map<CVDKind, std::string> answer_key;
  std::vector<ColorPairCertificate> certificates;
  std::uint64_t seed = 0;

  std::string digits() const;
  friend bool operator==(const IshiharaPlate&, const IshiharaPlate&) = default;
};

struct PlateOptions {
  PackingParams packing;
  int max_pair_samples = 60000;
  int max_attempts = 8;  // whole-plate retries when a composed plate misbehaves
  int min_circles_per_glyph = 6;
};

// Samples equal-lightness color pairs along the target's confusion direction
// until one is far apart for normal vision (>= kHighDeltaE) and close under
// the simulated profile (<= vanishing_limit(difficulty)). Candidates are
// quantized to 8 bits before they are scored, so the certificate is exact
// for the stored colors. Throws GenerationError with the best candidate seen
// when the budget runs out.
ColorPairCertificate pick_vanishing_pair(const CVDProfile& target, double difficulty,
                                         std::uint64_t seed, int max_samples = 60000);

// Two pairs sharing one ground color: the first vanishes for protans and
// stays visible to deutans, the second the other way round.
struct DiagnosticPairs {
  ColorPairCertificate protan_vanishing;
  ColorPairCertificate deutan_vanishing;
};
DiagnosticPairs pick_diagnostic_pairs(double difficulty, std::uint64_t seed,
                                      int max_samples = 60000);

// Pair maximizing the smallest simulated difference over the three dichromat
// kinds, subject to the normal-vision floor. The certificate records that
// worst kind.
ColorPairCertificate pick_demo_pair(std::uint64_t seed, int samples = 4000);

// Index of the glyph owning each circle (by center), or -1 for ground.
std::vector<int> assign_circles(const IshiharaPlate& plate);

struct GlyphStats {
  Lab mean_figure;
  Lab mean_ground;
  double lightness_gap = 0;  // mean L* of figure circles minus ground circles
  int figure_count = 0;
};
std::vector<GlyphStats> glyph_stats(const IshiharaPlate& plate);

// Simulated difference between each glyph's mean figure color and the mean
// ground color.
std::vector<double> glyph_contrast(const IshiharaPlate& plate, const CVDProfile& profile);
std::vector<double> glyph_contrast(const std::vector<GlyphStats>& stats, const CVDProfile& profile);

// Digits whose contrast reaches kVisibilityThreshold, in glyph order.
std::string visible_digits(const IshiharaPlate& plate, const CVDProfile& profile);

// The answer each viewer class should give for this design.
std::map<CVDKind, std::string> design_answers(const PlateDesign& design, std::string_view digits);

// Demo and Vanishing plates take one to three digits, Diagnostic exactly two.
IshiharaPlate compose_plate(const PlateDesign& design, std::string_view digits, std::uint64_t seed,
                            std::string id = {}, const PlateOptions& options = {});

std::string render_svg(const IshiharaPlate& plate);

struct GlyphReport {
  char digit = '0';
  double de_normal = 0;
  std::map<CVDKind, double> de_simulated;  // per dichromat kind
  double lightness_gap = 0;
};

struct PlateReport {
  bool pass = false;
  std::vector<GlyphReport> glyphs;
  std::vector<std::string> failures;
};

// Re-derives plate validity from the colored circles and the certificates:
// mean-color thresholds for the design, luminance leak, geometry, certificate
// arithmetic and answer-key agreement with visible_digits.
PlateReport validate_plate(const IshiharaPlate& plate, const PackingParams& packing = {});

// Recomputes a certificate's two differences from its stored colors.
ColorPairCertificate recertify(const ColorPairCertificate& cert);

}  // namespace cvd

#endif  // CVDKIT_PLATE_HPP_
