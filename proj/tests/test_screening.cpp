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

#include <doctest.h>

#include <set>

#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"
#include "cvdkit/screening.hpp"

using namespace cvd;

namespace {

const std::shared_ptr<const Battery>& shared_battery() {
  static const auto b = std::make_shared<const Battery>(create_battery(1234));
  return b;
}

std::vector<Response> answers_of(const Battery& b, CVDKind viewer) {
  std::vector<Response> out;
  for (const IshiharaPlate& p : b.plates) out.push_back({p.id, p.answer_key.at(viewer)});
  return out;
}

}  // namespace

TEST_SUITE("screening") {

TEST_CASE("default battery layout") {
  const Battery& b = *shared_battery();
  REQUIRE(b.plates.size() == 17);
  CHECK(b.composition.total() == 17);
  CHECK(b.plates.front().design.kind == PlateKind::kDemo);
  int demo = 0, protan = 0, deutan = 0, tritan = 0, diag = 0;
  std::set<std::string> ids;
  for (const IshiharaPlate& p : b.plates) {
    ids.insert(p.id);
    switch (p.design.kind) {
      case PlateKind::kDemo: ++demo; break;
      case PlateKind::kDiagnostic: ++diag; break;
      case PlateKind::kVanishing:
        if (p.design.target == CVDKind::kProtan) ++protan;
        if (p.design.target == CVDKind::kDeutan) ++deutan;
        if (p.design.target == CVDKind::kTritan) ++tritan;
        break;
    }
  }
  CHECK(demo == 1);
  CHECK(protan + deutan >= 6);
  CHECK(tritan >= 3);
  CHECK(diag >= 3);
  CHECK(ids.size() == 17);
}

TEST_CASE("vanishing difficulties are graded") {
  std::set<double> deutan;
  for (const IshiharaPlate& p : shared_battery()->plates) {
    if (p.design.target == CVDKind::kDeutan) deutan.insert(p.design.difficulty);
  }
  CHECK(deutan == std::set<double>{0.0, 1.0 / 3, 2.0 / 3, 1.0});
}

TEST_CASE("batteries depend only on the seed") {
  BatteryComposition small{3, 3, 3, 3};
  const Battery a = create_battery(5, small), b = create_battery(5, small);
  CHECK(a == b);
  CHECK(a.id == create_battery(5, small).id);
  CHECK(a.plates.size() == 13);
}

TEST_CASE("composition limits") {
  CHECK_THROWS_AS((BatteryComposition{2, 3, 4, 4}.validate()), ParameterError);
  CHECK_THROWS_AS((BatteryComposition{6, 0, 4, 4}.validate()), ParameterError);
  CHECK_THROWS_AS((BatteryComposition{4, 4, 2, 4}.validate()), ParameterError);
  CHECK_THROWS_AS((BatteryComposition{4, 4, 4, 2}.validate()), ParameterError);
  CHECK_NOTHROW((BatteryComposition{3, 3, 3, 3}.validate()));
}

TEST_CASE("a new session") {
  const TestSession s = start_session(shared_battery());
  CHECK(s.cursor() == 0);
  CHECK(s.responses().empty());
  CHECK(s.state() == SessionState::kInProgress);
  CHECK(s.current_plate() == &s.battery().plates[0]);
}

TEST_CASE("seventeen submissions complete a session") {
  TestSession s = start_session(shared_battery());
  for (const Response& r : answers_of(*shared_battery(), CVDKind::kNormal)) s = submit_response(s, r);
  CHECK(s.state() == SessionState::kComplete);
  CHECK(s.current_plate() == nullptr);
  CHECK_THROWS_AS(submit_response(s, {"p01", "1"}), StateError);
}

TEST_CASE("submission errors leave the session unchanged") {
  TestSession s = start_session(shared_battery());
  s.submit({s.current_plate()->id, "12"});
  const auto before = s.responses();
  CHECK_THROWS_AS(s.submit({"p01", "1"}), SequencingError);
  CHECK_THROWS_AS(s.submit({s.current_plate()->id, "1a"}), ValidationError);
  CHECK(s.responses() == before);
  CHECK(s.cursor() == 1);
  s.abort();
  CHECK(s.state() == SessionState::kAborted);
  CHECK(s.current_plate() == nullptr);
  CHECK_THROWS_AS(s.submit({"p02", "1"}), StateError);
}

TEST_CASE("random operation sequences keep the cursor in step") {
  Rng rng(77);
  for (int run = 0; run < 200; ++run) {
    TestSession s = start_session(shared_battery());
    for (int step = 0; step < 40; ++step) {
      const std::uint64_t op = rng.below(10);
      const IshiharaPlate* cur = s.current_plate();
      try {
        if (op == 0) {
          s.abort();
        } else if (op < 3) {
          s.submit({"p" + std::to_string(rng.below(20)), "1"});
        } else if (op < 4) {
          s.submit({cur ? cur->id : "p01", "x"});
        } else {
          s.submit({cur ? cur->id : "p01", std::to_string(rng.below(100))});
        }
      } catch (const Error&) {
      }
      if (s.state() == SessionState::kInProgress) REQUIRE(s.responses().size() == s.cursor());
      REQUIRE((s.state() == SessionState::kComplete) == (s.cursor() == s.battery().plates.size()));
    }
  }
}

TEST_CASE("answer validation") {
  CHECK_NOTHROW(validate_answer(""));
  CHECK_NOTHROW(validate_answer("0123456789"));
  CHECK_THROWS_AS(validate_answer("ab"), ValidationError);
  CHECK_THROWS_AS(validate_answer(" 1"), ValidationError);
}

TEST_CASE("all correct is normal") {
  const Classification c = classify(*shared_battery(), answers_of(*shared_battery(), CVDKind::kNormal));
  CHECK(c.kind == Diagnosis::kNormal);
  CHECK(c.severity == 0.0);
  CHECK(c.confidence == 1.0);
  CHECK(c.per_plate.size() == 17);
  for (const PlateOutcome& o : c.per_plate) CHECK(o.correct);
}

TEST_CASE("a wrong demo answer is unclassified") {
  auto r = answers_of(*shared_battery(), CVDKind::kNormal);
  r[0].answer = "0";
  const Classification c = classify(*shared_battery(), r);
  CHECK(c.kind == Diagnosis::kUnclassified);
  CHECK(c.confidence == 0.0);
}

TEST_CASE("answer-key respondents are classified by kind") {
  const Battery& b = *shared_battery();
  const Classification p = classify(b, answers_of(b, CVDKind::kProtan));
  CHECK(p.kind == Diagnosis::kProtan);
  CHECK(p.severity == 1.0);
  CHECK(p.confidence == 1.0);
  CHECK(classify(b, answers_of(b, CVDKind::kDeutan)).kind == Diagnosis::kDeutan);
  const Classification t = classify(b, answers_of(b, CVDKind::kTritan));
  CHECK(t.kind == Diagnosis::kTritan);
  CHECK(t.severity == 1.0);
}

TEST_CASE("red-green errors without diagnostic votes are unspecified") {
  const Battery& b = *shared_battery();
  auto r = answers_of(b, CVDKind::kDeutan);
  for (std::size_t i = 0; i < b.plates.size(); ++i) {
    if (b.plates[i].design.kind == PlateKind::kDiagnostic) r[i].answer = b.plates[i].digits();
  }
  const Classification c = classify(b, r);
  CHECK(c.kind == Diagnosis::kRedGreenUnspecified);
  CHECK(c.confidence == 0.0);
  int wrong = 0, red_green = 0;
  for (std::size_t i = 0; i < b.plates.size(); ++i) {
    const PlateDesign& d = b.plates[i].design;
    if (d.kind != PlateKind::kVanishing || d.target == CVDKind::kTritan) continue;
    ++red_green;
    wrong += r[i].answer != b.plates[i].digits();
  }
  CHECK(red_green == 8);
  CHECK(wrong >= 4);
  CHECK(c.severity == doctest::Approx(wrong / 8.0));
  CHECK(adaptation_profile(c) == CVDProfile(CVDKind::kDeutan, c.severity));
}

TEST_CASE("isolated lapses are tolerated") {
  const Battery& b = *shared_battery();
  auto r = answers_of(b, CVDKind::kNormal);
  int changed = 0;
  for (std::size_t i = 0; i < b.plates.size() && changed < 2; ++i) {
    if (b.plates[i].design.kind == PlateKind::kVanishing && b.plates[i].design.target != CVDKind::kTritan) {
      r[i].answer = "";
      ++changed;
    }
  }
  CHECK(classify(b, r).kind == Diagnosis::kNormal);
}

TEST_CASE("classify needs each plate exactly once") {
  const Battery& b = *shared_battery();
  auto r = answers_of(b, CVDKind::kNormal);
  auto missing = r;
  missing.pop_back();
  CHECK_THROWS_AS(classify(b, missing), ValidationError);
  auto dup = r;
  dup.back() = dup.front();
  CHECK_THROWS_AS(classify(b, dup), ValidationError);
  auto unknown = r;
  unknown.back().plate_id = "p99";
  CHECK_THROWS_AS(classify(b, unknown), ValidationError);
  // Order does not matter.
  std::reverse(r.begin(), r.end());
  CHECK(classify(b, r).kind == Diagnosis::kNormal);
}

TEST_CASE("simulated respondents") {
  const Battery& b = *shared_battery();
  for (const IshiharaPlate& p : b.plates) {
    CHECK(simulated_respondent(CVDProfile::normal(), p).answer == p.digits());
    if (p.design.kind == PlateKind::kVanishing && p.design.target == CVDKind::kDeutan &&
        p.design.difficulty == 0.0) {
      CHECK(simulated_respondent(CVDProfile::full(CVDKind::kDeutan), p).answer == "");
    }
    if (p.design.kind == PlateKind::kDiagnostic) {
      CHECK(simulated_respondent(CVDProfile::full(CVDKind::kProtan), p).answer == p.digits().substr(1));
    }
  }
  const Classification d = classify(b, simulated_responses(CVDProfile::full(CVDKind::kDeutan), b));
  CHECK(d.kind == Diagnosis::kDeutan);
  CHECK(d.severity >= 0.75);
  CHECK(classify(b, simulated_responses(CVDProfile::full(CVDKind::kProtan), b)).kind == Diagnosis::kProtan);
}

TEST_CASE("adaptation profiles") {
  Classification c;
  c.kind = Diagnosis::kUnclassified;
  CHECK(adaptation_profile(c) == CVDProfile::normal());
  c.kind = Diagnosis::kTritan;
  c.severity = 0.75;
  CHECK(adaptation_profile(c) == CVDProfile(CVDKind::kTritan, 0.75));
}

TEST_CASE("diagnosis names") {
  for (Diagnosis d : {Diagnosis::kNormal, Diagnosis::kProtan, Diagnosis::kDeutan, Diagnosis::kTritan,
                      Diagnosis::kRedGreenUnspecified, Diagnosis::kUnclassified}) {
    CHECK(parse_diagnosis(to_string(d)) == d);
  }
  CHECK(to_string(Diagnosis::kRedGreenUnspecified) == "red_green_unspecified");
}

}  // TEST_SUITE
