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

#include "cvdkit/serialize.hpp"

#include "cvdkit/error.hpp"

namespace cvd {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::type_error& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

CVDKind kind_from(const std::string& name) {
  const auto k = parse_cvd_kind(name);
  if (!k) throw SchemaError("unknown vision kind '" + name + "'");
  return *k;
}

}  // namespace

void to_json(Json& j, const SRGB8& c) { j = to_hex(c); }

void from_json(const Json& j, SRGB8& c) {
  if (!j.is_string()) throw SchemaError("color must be a \"#RRGGBB\" string");
  try {
    c = parse_hex(j.get<std::string>());
  } catch (const ParameterError& e) {
    throw SchemaError(e.what());
  }
}

void to_json(Json& j, const CVDProfile& p) {
  j = Json{{"kind", to_string(p.kind())}, {"severity", p.severity()}};
}

void from_json(const Json& j, CVDProfile& p) {
  const CVDKind kind = kind_from(field<std::string>(j, "kind"));
  try {
    p = CVDProfile(kind, field<double>(j, "severity"));
  } catch (const ParameterError& e) {
    throw SchemaError(e.what());
  }
}

void to_json(Json& j, const PlateDesign& d) {
  j = Json{{"kind", to_string(d.kind)},
           {"target", d.target ? Json(to_string(*d.target)) : Json(nullptr)},
           {"difficulty", d.difficulty}};
}

void from_json(const Json& j, PlateDesign& d) {
  const auto kind = parse_plate_kind(field<std::string>(j, "kind"));
  if (!kind) throw SchemaError("unknown plate kind");
  d.kind = *kind;
  d.target.reset();
  if (j.contains("target") && !j.at("target").is_null()) {
    d.target = kind_from(field<std::string>(j, "target"));
  }
  d.difficulty = field<double>(j, "difficulty");
  try {
    d.validate();
  } catch (const ParameterError& e) {
    throw SchemaError(e.what());
  }
}

void to_json(Json& j, const Circle& c) {
  j = Json{{"cx", c.cx}, {"cy", c.cy}, {"radius", c.radius}, {"color", c.color}};
}

void from_json(const Json& j, Circle& c) {
  c.cx = field<double>(j, "cx");
  c.cy = field<double>(j, "cy");
  c.radius = field<double>(j, "radius");
  c.color = field<SRGB8>(j, "color");
}

void to_json(Json& j, const Glyph& g) {
  j = Json{{"digit", std::string(1, g.digit)},
           {"x", g.placement.x},
           {"y", g.placement.y},
           {"cell", g.placement.cell}};
}

void from_json(const Json& j, Glyph& g) {
  const auto digit = field<std::string>(j, "digit");
  if (digit.size() != 1 || digit[0] < '0' || digit[0] > '9') {
    throw SchemaError("glyph digit must be a single decimal digit");
  }
  g.digit = digit[0];
  g.placement = {field<double>(j, "x"), field<double>(j, "y"), field<double>(j, "cell")};
}

void to_json(Json& j, const ColorPairCertificate& c) {
  j = Json{{"figure", c.figure},
           {"ground", c.ground},
           {"de_normal", c.de_normal},
           {"de_simulated", c.de_simulated},
           {"profile", c.profile}};
}

void from_json(const Json& j, ColorPairCertificate& c) {
  c.figure = field<SRGB8>(j, "figure");
  c.ground = field<SRGB8>(j, "ground");
  c.de_normal = field<double>(j, "de_normal");
  c.de_simulated = field<double>(j, "de_simulated");
  c.profile = field<CVDProfile>(j, "profile");
}

void to_json(Json& j, const IshiharaPlate& p) {
  Json key = Json::object();
  for (const auto& [k, v] : p.answer_key) key[std::string(to_string(k))] = v;
  j = Json{{"id", p.id},         {"design", p.design},   {"seed", p.seed},
           {"glyphs", p.glyphs}, {"circles", p.circles}, {"answer_key", key},
           {"certificates", p.certificates}};
}

void from_json(const Json& j, IshiharaPlate& p) {
  p.id = field<std::string>(j, "id");
  p.design = field<PlateDesign>(j, "design");
  p.seed = field<std::uint64_t>(j, "seed");
  p.glyphs = field<std::vector<Glyph>>(j, "glyphs");
  p.circles = field<std::vector<Circle>>(j, "circles");
  p.certificates = field<std::vector<ColorPairCertificate>>(j, "certificates");
  p.answer_key.clear();
  const Json key = field<Json>(j, "answer_key");
  if (!key.is_object()) throw SchemaError("answer_key must be an object");
  for (const auto& [name, answer] : key.items()) {
    if (!answer.is_string()) throw SchemaError("answer_key values must be strings");
    p.answer_key[kind_from(name)] = answer.get<std::string>();
  }
}

void to_json(Json& j, const BatteryComposition& c) {
  j = Json{{"demo", 1},
           {"protan_vanishing", c.protan_vanishing},
           {"deutan_vanishing", c.deutan_vanishing},
           {"tritan_vanishing", c.tritan_vanishing},
           {"diagnostic", c.diagnostic}};
}

void from_json(const Json& j, BatteryComposition& c) {
  c.protan_vanishing = field<int>(j, "protan_vanishing");
  c.deutan_vanishing = field<int>(j, "deutan_vanishing");
  c.tritan_vanishing = field<int>(j, "tritan_vanishing");
  c.diagnostic = field<int>(j, "diagnostic");
}

void to_json(Json& j, const Battery& b) {
  j = Json{{"id", b.id}, {"seed", b.seed}, {"composition", b.composition}, {"plates", b.plates}};
}

void from_json(const Json& j, Battery& b) {
  b.id = field<std::string>(j, "id");
  b.seed = field<std::uint64_t>(j, "seed");
  b.composition = field<BatteryComposition>(j, "composition");
  b.plates = field<std::vector<IshiharaPlate>>(j, "plates");
  if (b.plates.empty()) throw SchemaError("battery has no plates");
}

void to_json(Json& j, const Response& r) { j = Json{{"plate_id", r.plate_id}, {"answer", r.answer}}; }

void from_json(const Json& j, Response& r) {
  r.plate_id = field<std::string>(j, "plate_id");
  r.answer = field<std::string>(j, "answer");
}

void to_json(Json& j, const ResponseSet& r) {
  j = Json{{"battery_id", r.battery_id}, {"responses", r.responses}};
}

void from_json(const Json& j, ResponseSet& r) {
  r.battery_id = field<std::string>(j, "battery_id");
  r.responses = field<std::vector<Response>>(j, "responses");
}

void to_json(Json& j, const PlateOutcome& o) {
  j = Json{{"plate_id", o.plate_id}, {"expected", o.expected}, {"given", o.given}, {"correct", o.correct}};
}

void from_json(const Json& j, PlateOutcome& o) {
  o.plate_id = field<std::string>(j, "plate_id");
  o.expected = field<std::string>(j, "expected");
  o.given = field<std::string>(j, "given");
  o.correct = field<bool>(j, "correct");
}

void to_json(Json& j, const Classification& c) {
  j = Json{{"kind", to_string(c.kind)},
           {"severity", c.severity},
           {"confidence", c.confidence},
           {"per_plate", c.per_plate}};
}

void from_json(const Json& j, Classification& c) {
  const auto kind = parse_diagnosis(field<std::string>(j, "kind"));
  if (!kind) throw SchemaError("unknown classification kind");
  c.kind = *kind;
  c.severity = field<double>(j, "severity");
  c.confidence = field<double>(j, "confidence");
  c.per_plate = field<std::vector<PlateOutcome>>(j, "per_plate");
}

Json redacted_classification(const Classification& c) {
  Json plates = Json::array();
  for (const PlateOutcome& o : c.per_plate) {
    plates.push_back({{"plate_id", o.plate_id}, {"correct", o.correct}});
  }
  return Json{{"kind", to_string(c.kind)},
              {"severity", c.severity},
              {"confidence", c.confidence},
              {"per_plate", plates}};
}

void to_json(Json& j, const PaletteEntry& e) {
  j = Json{{"role", e.role}, {"srgb", e.color}, {"pinned", e.pinned}};
}

void from_json(const Json& j, PaletteEntry& e) {
  e.role = field<std::string>(j, "role");
  e.color = field<SRGB8>(j, "srgb");
  e.pinned = j.contains("pinned") ? field<bool>(j, "pinned") : false;
}

void to_json(Json& j, const Palette& p) { j = Json{{"name", p.name}, {"colors", p.entries}}; }

void from_json(const Json& j, Palette& p) {
  p.name = field<std::string>(j, "name");
  p.entries = field<std::vector<PaletteEntry>>(j, "colors");
  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw SchemaError(e.what());
  }
}

void to_json(Json& j, const AdaptationResult& r) {
  j = Json{{"adapted", r.adapted},
           {"initial_score", r.initial_score},
           {"final_score", r.final_score},
           {"iterations", r.iterations},
           {"objective_trace", r.objective_trace}};
}

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

}  // namespace cvd
