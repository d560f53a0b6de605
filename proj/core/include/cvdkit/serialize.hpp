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

#ifndef CVDKIT_SERIALIZE_HPP_
#define CVDKIT_SERIALIZE_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdkit/adapt.hpp"
#include "cvdkit/error.hpp"
#include "cvdkit/plate.hpp"
#include "cvdkit/screening.hpp"

// JSON documents exchanged by the CLI and the HTTP service. Colors are
// "#RRGGBB" strings, enums are lowercase names, seeds are unsigned 64-bit
// integers. Every reader throws SchemaError on a missing or mistyped field.
namespace cvd {

using Json = nlohmann::json;

void to_json(Json& j, const SRGB8& c);
void from_json(const Json& j, SRGB8& c);
void to_json(Json& j, const CVDProfile& p);
void from_json(const Json& j, CVDProfile& p);
void to_json(Json& j, const PlateDesign& d);
void from_json(const Json& j, PlateDesign& d);
void to_json(Json& j, const Circle& c);
void from_json(const Json& j, Circle& c);
void to_json(Json& j, const Glyph& g);
void from_json(const Json& j, Glyph& g);
void to_json(Json& j, const ColorPairCertificate& c);
void from_json(const Json& j, ColorPairCertificate& c);
void to_json(Json& j, const IshiharaPlate& p);
void from_json(const Json& j, IshiharaPlate& p);
void to_json(Json& j, const BatteryComposition& c);
void from_json(const Json& j, BatteryComposition& c);
void to_json(Json& j, const Battery& b);
void from_json(const Json& j, Battery& b);
void to_json(Json& j, const Response& r);
void from_json(const Json& j, Response& r);
void to_json(Json& j, const PlateOutcome& o);
void from_json(const Json& j, PlateOutcome& o);
void to_json(Json& j, const Classification& c);
void from_json(const Json& j, Classification& c);
void to_json(Json& j, const PaletteEntry& e);
void from_json(const Json& j, PaletteEntry& e);
void to_json(Json& j, const Palette& p);
void from_json(const Json& j, Palette& p);
void to_json(Json& j, const AdaptationResult& r);

// {battery_id, responses: [{plate_id, answer}]}
struct ResponseSet {
  std::string battery_id;
  std::vector<Response> responses;
};
void to_json(Json& j, const ResponseSet& r);
void from_json(const Json& j, ResponseSet& r);

// Converts with nlohmann's exceptions rewrapped as SchemaError.
template <typename T>
T json_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

// Parses text, rewrapping syntax errors as SchemaError.
Json parse_json(const std::string& text, const char* what);

// Classification as served to the test taker: per-plate entries carry only
// the plate id and the correctness flag, never the expected answer.
Json redacted_classification(const Classification& c);

}  // namespace cvd

#endif  // CVDKIT_SERIALIZE_HPP_
