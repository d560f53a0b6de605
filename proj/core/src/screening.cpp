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

#include "cvdkit/screening.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>

#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"

namespace cvd {
namespace {

struct PlateJob {
  PlateDesign design;
  std::string digits;
  std::uint64_t seed = 0;
};

char random_digit(Rng& rng, bool nonzero) {
  return static_cast<char>('0' + (nonzero ? 1 + rng.below(9) : rng.below(10)));
}

std::string random_digits(Rng& rng, int count) {
  std::string s;
  for (int i = 0; i < count; ++i) s.push_back(random_digit(rng, i == 0 && count > 1));
  return s;
}

void add_group(std::vector<PlateJob>& jobs, Rng& rng, CVDKind target, int count) {
  for (int i = 0; i < count; ++i) {
    const double difficulty = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    jobs.push_back({{PlateKind::kVanishing, target, difficulty},
                    random_digits(rng, 1 + static_cast<int>(rng.below(2))), rng.fork()});
  }
}

bool is_red_green(const IshiharaPlate& p) {
  return p.design.kind == PlateKind::kVanishing &&
         (p.design.target == CVDKind::kProtan || p.design.target == CVDKind::kDeutan);
}

bool targets(const IshiharaPlate& p, CVDKind kind) {
  return p.design.kind == PlateKind::kVanishing && p.design.target == kind;
}

// 1 at either extreme of the error range, otherwise the error fraction.
double margin_confidence(int errors, int plates) {
  if (plates == 0) return 0.0;
  if (errors == 0 || errors == plates) return 1.0;
  return static_cast<double>(errors) / plates;
}

}  // namespace

void BatteryComposition::validate() const {
  if (protan_vanishing < 1 || deutan_vanishing < 1 || protan_vanishing + deutan_vanishing < 6) {
    throw ParameterError("battery needs at least 6 red-green vanishing plates covering both targets");
  }
  if (tritan_vanishing < 3) throw ParameterError("battery needs at least 3 tritan plates");
  if (diagnostic < 3) throw ParameterError("battery needs at least 3 diagnostic plates");
}

const IshiharaPlate* Battery::find(std::string_view plate_id) const {
  for (const IshiharaPlate& p : plates) {
    if (p.id == plate_id) return &p;
  }
  return nullptr;
}

Battery create_battery(std::uint64_t seed, const BatteryComposition& composition,
                       const PlateOptions& options) {
  composition.validate();
  Rng rng(seed);

  std::vector<PlateJob> jobs;
  jobs.push_back({{PlateKind::kDemo, std::nullopt, 0.0}, random_digits(rng, 2), rng.fork()});
  add_group(jobs, rng, CVDKind::kProtan, composition.protan_vanishing);
  add_group(jobs, rng, CVDKind::kDeutan, composition.deutan_vanishing);
  add_group(jobs, rng, CVDKind::kTritan, composition.tritan_vanishing);
  for (int i = 0; i < composition.diagnostic; ++i) {
    std::string digits = random_digits(rng, 1);
    char second = random_digit(rng, false);
    while (second == digits[0]) second = random_digit(rng, false);
    digits.push_back(second);
    jobs.push_back({{PlateKind::kDiagnostic, std::nullopt, 0.0}, digits, rng.fork()});
  }

  // Fisher-Yates over everything after the demo plate.
  for (std::size_t i = jobs.size() - 1; i > 1; --i) {
    const std::size_t j = 1 + rng.below(i);
    std::swap(jobs[i], jobs[j]);
  }

  std::vector<std::future<IshiharaPlate>> pending;
  pending.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "p%02zu", i + 1);
    pending.push_back(std::async(std::launch::async, [job = jobs[i], id = std::string(id), &options] {
      return compose_plate(job.design, job.digits, job.seed, id, options);
    }));
  }

  Battery battery;
  char id[32];
  std::snprintf(id, sizeof id, "battery-%016llx", static_cast<unsigned long long>(seed));
  battery.id = id;
  battery.seed = seed;
  battery.composition = composition;
  for (auto& f : pending) battery.plates.push_back(f.get());
  return battery;
}

void validate_answer(std::string_view answer) {
  for (char c : answer) {
    if (c < '0' || c > '9') {
      throw ValidationError("answer '" + std::string(answer) + "' contains a non-digit character");
    }
  }
}

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::kInProgress:
      return "in_progress";
    case SessionState::kComplete:
      return "complete";
    case SessionState::kAborted:
      return "aborted";
  }
  return "in_progress";
}

TestSession::TestSession(std::string id, std::shared_ptr<const Battery> battery)
    : id_(std::move(id)), battery_(std::move(battery)) {
  if (!battery_ || battery_->plates.empty()) throw ParameterError("session needs a non-empty battery");
}

const IshiharaPlate* TestSession::current_plate() const {
  if (state_ != SessionState::kInProgress) return nullptr;
  return &battery_->plates[responses_.size()];
}

void TestSession::submit(const Response& response) {
  if (state_ != SessionState::kInProgress) {
    throw StateError("session " + id_ + " is " + std::string(to_string(state_)));
  }
  const IshiharaPlate& expected = battery_->plates[responses_.size()];
  if (response.plate_id != expected.id) {
    throw SequencingError("response for plate '" + response.plate_id + "' but the current plate is '" +
                          expected.id + "'");
  }
  validate_answer(response.answer);
  responses_.push_back(response);
  if (responses_.size() == battery_->plates.size()) state_ = SessionState::kComplete;
}

void TestSession::abort() {
  if (state_ != SessionState::kInProgress) {
    throw StateError("session " + id_ + " is " + std::string(to_string(state_)));
  }
  state_ = SessionState::kAborted;
}

TestSession start_session(std::shared_ptr<const Battery> battery, std::string id) {
  return TestSession(std::move(id), std::move(battery));
}

TestSession submit_response(TestSession session, const Response& response) {
  session.submit(response);
  return session;
}

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::kNormal:
      return "normal";
    case Diagnosis::kProtan:
      return "protan";
    case Diagnosis::kDeutan:
      return "deutan";
    case Diagnosis::kTritan:
      return "tritan";
    case Diagnosis::kRedGreenUnspecified:
      return "red_green_unspecified";
    case Diagnosis::kUnclassified:
      return "unclassified";
  }
  return "unclassified";
}

std::optional<Diagnosis> parse_diagnosis(std::string_view name) {
  for (Diagnosis d : {Diagnosis::kNormal, Diagnosis::kProtan, Diagnosis::kDeutan, Diagnosis::kTritan,
                      Diagnosis::kRedGreenUnspecified, Diagnosis::kUnclassified}) {
    if (name == to_string(d)) return d;
  }
  return std::nullopt;
}

Classification classify(const Battery& battery, std::span<const Response> responses) {
  std::map<std::string_view, const Response*> by_plate;
  for (const Response& r : responses) {
    if (!battery.find(r.plate_id)) {
      throw ValidationError("response for unknown plate '" + r.plate_id + "'");
    }
    if (!by_plate.emplace(r.plate_id, &r).second) {
      throw ValidationError("duplicate response for plate '" + r.plate_id + "'");
    }
    validate_answer(r.answer);
  }

  Classification out;
  int rg_errors = 0, rg_plates = 0;
  int tritan_errors = 0, tritan_plates = 0;
  std::map<CVDKind, int> target_errors, target_plates;
  int protan_votes = 0, deutan_votes = 0;
  bool demo_wrong = false;

  for (const IshiharaPlate& plate : battery.plates) {
    const auto it = by_plate.find(plate.id);
    if (it == by_plate.end()) throw ValidationError("missing response for plate '" + plate.id + "'");
    const std::string& given = it->second->answer;
    const std::string& expected = plate.answer_key.at(CVDKind::kNormal);
    const bool correct = given == expected;
    out.per_plate.push_back({plate.id, expected, given, correct});

    switch (plate.design.kind) {
      case PlateKind::kDemo:
        demo_wrong |= !correct;
        break;
      case PlateKind::kVanishing:
        ++target_plates[*plate.design.target];
        if (!correct) ++target_errors[*plate.design.target];
        if (is_red_green(plate)) {
          ++rg_plates;
          rg_errors += !correct;
        } else if (targets(plate, CVDKind::kTritan)) {
          ++tritan_plates;
          tritan_errors += !correct;
        }
        break;
      case PlateKind::kDiagnostic:
        if (given == plate.answer_key.at(CVDKind::kProtan)) ++protan_votes;
        else if (given == plate.answer_key.at(CVDKind::kDeutan)) ++deutan_votes;
        break;
    }
  }

  auto fraction = [](int errors, int plates) {
    return plates == 0 ? 0.0 : static_cast<double>(errors) / plates;
  };

  if (demo_wrong) {
    out.kind = Diagnosis::kUnclassified;
    out.severity = 0.0;
    out.confidence = 0.0;
  } else if (rg_errors >= kRedGreenErrorThreshold) {
    const int cast = protan_votes + deutan_votes;
    if (protan_votes > deutan_votes) {
      out.kind = Diagnosis::kProtan;
      out.severity = fraction(target_errors[CVDKind::kProtan], target_plates[CVDKind::kProtan]);
    } else if (deutan_votes > protan_votes) {
      out.kind = Diagnosis::kDeutan;
      out.severity = fraction(target_errors[CVDKind::kDeutan], target_plates[CVDKind::kDeutan]);
    } else {
      out.kind = Diagnosis::kRedGreenUnspecified;
      out.severity = fraction(rg_errors, rg_plates);
    }
    out.confidence = cast == 0 ? 0.0 : static_cast<double>(std::abs(protan_votes - deutan_votes)) / cast;
  } else if (tritan_errors >= kTritanErrorThreshold) {
    out.kind = Diagnosis::kTritan;
    out.severity = fraction(tritan_errors, tritan_plates);
    out.confidence = margin_confidence(tritan_errors, tritan_plates);
  } else {
    out.kind = Diagnosis::kNormal;
    out.severity = 0.0;
    out.confidence = margin_confidence(tritan_errors, tritan_plates);
  }
  return out;
}

CVDProfile adaptation_profile(const Classification& c) {
  switch (c.kind) {
    case Diagnosis::kProtan:
      return {CVDKind::kProtan, c.severity};
    case Diagnosis::kDeutan:
    case Diagnosis::kRedGreenUnspecified:
      return {CVDKind::kDeutan, c.severity};
    case Diagnosis::kTritan:
      return {CVDKind::kTritan, c.severity};
    case Diagnosis::kNormal:
    case Diagnosis::kUnclassified:
      break;
  }
  return CVDProfile::normal();
}

Response simulated_respondent(const CVDProfile& profile, const IshiharaPlate& plate) {
  return {plate.id, visible_digits(plate, profile)};
}

std::vector<Response> simulated_responses(const CVDProfile& profile, const Battery& battery) {
  std::vector<Response> out;
  out.reserve(battery.plates.size());
  for (const IshiharaPlate& p : battery.plates) out.push_back(simulated_respondent(profile, p));
  return out;
}

}  // namespace cvd
