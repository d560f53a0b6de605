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

#ifndef CVDKIT_SCREENING_HPP_
#define CVDKIT_SCREENING_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvdkit/plate.hpp"
#include "cvdkit/simulate.hpp"

namespace cvd {

// Plate counts per group. The demo plate is implicit: every battery opens
// with exactly one.
struct BatteryComposition {
  int protan_vanishing = 4;
  int deutan_vanishing = 4;
  int tritan_vanishing = 4;
  int diagnostic = 4;

  int total() const { return 1 + protan_vanishing + deutan_vanishing + tritan_vanishing + diagnostic; }
  // Throws ParameterError: needs >= 6 red-green vanishing plates (each
  // target >= 1), >= 3 tritan and >= 3 diagnostic plates.
  void validate() const;
  friend bool operator==(const BatteryComposition&, const BatteryComposition&) = default;
};

struct Battery {
  std::string id;
  std::vector<IshiharaPlate> plates;
  BatteryComposition composition;
  std::uint64_t seed = 0;

  const IshiharaPlate* find(std::string_view plate_id) const;
  friend bool operator==(const Battery&, const Battery&) = default;
};

// Demo plate first, remaining plates in a seed-determined order. Vanishing
// difficulties are spread evenly over [0,1] within each target group.
// Plates are generated concurrently; the result depends only on the seed.
Battery create_battery(std::uint64_t seed, const BatteryComposition& composition = {},
                       const PlateOptions& options = {});

struct Response {
  std::string plate_id;
  std::string answer;  // digits only; empty means "saw nothing"
  friend bool operator==(const Response&, const Response&) = default;
};

// Throws ValidationError unless every character is a decimal digit.
void validate_answer(std::string_view answer);

enum class SessionState { kInProgress, kComplete, kAborted };
std::string_view to_string(SessionState state);

class TestSession {
 public:
  TestSession(std::string id, std::shared_ptr<const Battery> battery);

  const std::string& id() const { return id_; }
  const Battery& battery() const { return *battery_; }
  std::shared_ptr<const Battery> battery_ptr() const { return battery_; }
  std::size_t cursor() const { return responses_.size(); }
  const std::vector<Response>& responses() const { return responses_; }
  SessionState state() const { return state_; }
  // Null once every plate is answered.
  const IshiharaPlate* current_plate() const;

  // Appends the response and advances. Throws StateError when not in
  // progress, SequencingError when the response names another plate and
  // ValidationError for a malformed answer; the session is unchanged on
  // any error.
  void submit(const Response& response);
  void abort();

 private:
  std::string id_;
  std::shared_ptr<const Battery> battery_;
  std::vector<Response> responses_;
  SessionState state_ = SessionState::kInProgress;
};

TestSession start_session(std::shared_ptr<const Battery> battery, std::string id = "session");
TestSession submit_response(TestSession session, const Response& response);

enum class Diagnosis { kNormal, kProtan, kDeutan, kTritan, kRedGreenUnspecified, kUnclassified };
std::string_view to_string(Diagnosis d);
std::optional<Diagnosis> parse_diagnosis(std::string_view name);

struct PlateOutcome {
  std::string plate_id;
  std::string expected;
  std::string given;
  bool correct = false;
  friend bool operator==(const PlateOutcome&, const PlateOutcome&) = default;
};

struct Classification {
  Diagnosis kind = Diagnosis::kUnclassified;
  double severity = 0;
  double confidence = 0;
  std::vector<PlateOutcome> per_plate;  // battery order
  friend bool operator==(const Classification&, const Classification&) = default;
};

// Error counts below these are tolerated as isolated lapses.
inline constexpr int kRedGreenErrorThreshold = 3;
inline constexpr int kTritanErrorThreshold = 2;

// Rule-based diagnosis. Responses may arrive in any order but must cover
// every plate exactly once (ValidationError otherwise).
Classification classify(const Battery& battery, std::span<const Response> responses);

// The profile the adaptation stage should use for a diagnosis: unspecified
// red-green deficiency adapts as deutan, Normal and Unclassified map to the
// normal profile.
CVDProfile adaptation_profile(const Classification& c);

// A deterministic stand-in for a human test taker: reports the digits whose
// mean figure/ground colors remain kVisibilityThreshold apart after
// simulation.
Response simulated_respondent(const CVDProfile& profile, const IshiharaPlate& plate);
std::vector<Response> simulated_responses(const CVDProfile& profile, const Battery& battery);

}  // namespace cvd

#endif  // CVDKIT_SCREENING_HPP_
