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

#include "cvdkit/serialize.hpp"

using namespace cvd;

TEST_SUITE("serialize") {

TEST_CASE("plate round trip") {
  const IshiharaPlate p = compose_plate({PlateKind::kDiagnostic, std::nullopt, 0}, "27", 12, "p07");
  const Json j = p;
  CHECK(j["design"]["kind"] == "diagnostic");
  CHECK(j["design"]["target"].is_null());
  CHECK(j["circles"][0]["color"].get<std::string>().size() == 7);
  CHECK(j["answer_key"]["protan"] == "7");
  CHECK(json_as<IshiharaPlate>(Json::parse(j.dump()), "plate") == p);
}

TEST_CASE("battery round trip") {
  const Battery b = create_battery(3, {3, 3, 3, 3});
  const Json j = b;
  CHECK(j["composition"]["demo"] == 1);
  CHECK(j["plates"].size() == 13);
  CHECK(json_as<Battery>(Json::parse(j.dump()), "battery") == b);
}

TEST_CASE("palette files") {
  const Json j = Json::parse(R"({"name":"x","colors":[
      {"role":"bg","srgb":"#ffffff","pinned":true},
      {"role":"fg","srgb":"#102030","pinned":false}]})");
  const Palette p = json_as<Palette>(j, "palette");
  CHECK(p.name == "x");
  CHECK(p.entries[0].pinned);
  CHECK(p.entries[1].color == SRGB8{0x10, 0x20, 0x30});
  CHECK(Json(p)["colors"][0]["srgb"] == "#FFFFFF");
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(json_as<Palette>(Json::parse(R"({"colors":[]})"), "p"), SchemaError);
  CHECK_THROWS_AS(json_as<Palette>(Json::parse(R"({"name":"x","colors":[{"role":"a","srgb":"#12"}]})"), "p"),
                  SchemaError);
  CHECK_THROWS_AS(json_as<CVDProfile>(Json::parse(R"({"kind":"deutan","severity":2})"), "p"), SchemaError);
  CHECK_THROWS_AS(json_as<CVDProfile>(Json::parse(R"({"kind":"purple","severity":1})"), "p"), SchemaError);
  CHECK_THROWS_AS(json_as<ResponseSet>(Json::parse(R"({"battery_id":7,"responses":[]})"), "r"), SchemaError);
  CHECK_THROWS_AS(parse_json("{", "text"), SchemaError);
}

TEST_CASE("classification documents") {
  Classification c;
  c.kind = Diagnosis::kDeutan;
  c.severity = 0.75;
  c.confidence = 0.5;
  c.per_plate = {{"p01", "12", "12", true}, {"p02", "3", "", false}};
  const Json full = c;
  CHECK(full["kind"] == "deutan");
  CHECK(json_as<Classification>(full, "c") == c);

  const Json red = redacted_classification(c);
  CHECK(red["per_plate"][1] == Json{{"plate_id", "p02"}, {"correct", false}});
  CHECK_FALSE(red["per_plate"][0].contains("expected"));
}

TEST_CASE("adaptation results") {
  AdaptationResult r;
  r.adapted = {"p", {{"a", {1, 2, 3}}, {"b", {4, 5, 6}, true}}};
  r.objective_trace = {3, 2, 1};
  r.iterations = 2;
  const Json j = r;
  CHECK(j["adapted"]["colors"][1]["pinned"] == true);
  CHECK(j["iterations"] == 2);
  CHECK(j["objective_trace"].size() == 3);
  CHECK(j.contains("initial_score"));
  CHECK(j.contains("final_score"));
}

}  // TEST_SUITE
