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

#include "cvdkit/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"

namespace cvd {
namespace {

HttpReply json_reply(int status, const Json& body) {
  HttpReply r;
  r.status = status;
  r.body = body.dump();
  return r;
}

HttpReply error_reply(int status, const std::string& message) {
  return json_reply(status, Json{{"error", message}});
}

PaletteEntry entry(const char* role, const char* hex, bool pinned = false) {
  return PaletteEntry{role, parse_hex(hex), pinned};
}

Palette with_accents(const char* name, const char* donor, const char* acceptor, const char* link) {
  return Palette{name,
                 {entry("background", "#FFFFFF", true), entry("text", "#212121", true),
                  entry("brand", "#C62828", true), entry("donor", donor), entry("acceptor", acceptor),
                  entry("link", link)}};
}

std::string hex_id(std::uint64_t hi, std::uint64_t lo) {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

std::uint64_t random_u64() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::int64_t system_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string strip_hash(std::string hex) { return hex.substr(1); }

}  // namespace

Palette builtin_default_palette() {
  return with_accents("lifeline-default", "#2E7D32", "#F9A825", "#1565C0");
}

std::vector<Palette> builtin_catalog() {
  return {with_accents("blue-orange", "#0072B2", "#E69F00", "#CC79A7"),
          with_accents("teal-magenta", "#00796B", "#AD1457", "#283593"),
          with_accents("dark-light", "#1B5E20", "#FFEB3B", "#7B1FA2")};
}

Palette load_palette(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read palette " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Palette p = json_as<Palette>(parse_json(ss.str(), path.c_str()), path.c_str());
  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return p;
}

std::vector<Palette> load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  std::vector<fs::path> files;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->path().extension() == ".json") files.push_back(it->path());
  }
  if (ec) throw IoError("cannot read catalog " + dir + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<Palette> out;
  for (const fs::path& f : files) out.push_back(load_palette(f.string()));
  return out;
}

// ---- event log ----

EventLog::EventLog(const std::string& path) : path_(path) {}

void EventLog::append(const Json& event) {
  if (path_.empty()) return;
  std::lock_guard lock(mu_);
  std::FILE* f = std::fopen(path_.c_str(), "ab");
  if (!f) throw IoError("cannot open state file " + path_);
  const std::string line = event.dump() + "\n";
  const bool ok = std::fwrite(line.data(), 1, line.size(), f) == line.size() && std::fflush(f) == 0;
  std::fclose(f);
  if (!ok) throw IoError("cannot write state file " + path_);
}

std::vector<Json> EventLog::load(const std::string& path) {
  std::vector<Json> events;
  if (!std::filesystem::exists(path)) return events;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read state file " + path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    try {
      Json j = Json::parse(line);
      if (!j.is_object() || !j.contains("event") || !j["event"].is_string()) {
        throw SchemaError("not an event object");
      }
      events.push_back(std::move(j));
    } catch (const std::exception& e) {
      throw SchemaError(path + ": line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("cannot read state file " + path);
  return events;
}

// ---- adaptation ----

Json adapt_for_classification(const Classification& c, const Palette& default_palette,
                              const std::vector<Palette>& catalog, const OptimizeOptions& options) {
  const CVDProfile profile = adaptation_profile(c);
  std::vector<Palette> schemes{default_palette};
  schemes.insert(schemes.end(), catalog.begin(), catalog.end());

  std::size_t index = 0;
  if (!profile.is_identity()) index = select_scheme(schemes, profile).index;
  const AdaptationResult result = optimize_palette(schemes[index], profile, options);
  return Json{{"profile", profile},
              {"retest_recommended", c.kind == Diagnosis::kUnclassified},
              {"scheme_index", index},
              {"scheme_name", schemes[index].name},
              {"result", result}};
}

// ---- service ----

struct SessionService::Entry {
  std::mutex mu;
  TestSession session;
  std::uint64_t seed = 0;
  std::int64_t created_ms = 0;
  std::optional<Classification> classification;
  std::optional<std::string> result_body;

  Entry(std::string id, std::shared_ptr<const Battery> battery, std::uint64_t s, std::int64_t t)
      : session(std::move(id), std::move(battery)), seed(s), created_ms(t) {}
};

SessionService::SessionService(ServiceConfig config) : config_(std::move(config)), log_(config_.state_path) {
  if (!config_.clock) config_.clock = system_ms;
  config_.composition.validate();
  config_.default_palette.validate();
  for (const Palette& p : config_.catalog) p.validate();
  if (!config_.state_path.empty()) replay(EventLog::load(config_.state_path));
}

SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<const Battery> SessionService::battery_for(std::uint64_t seed) {
  {
    std::lock_guard lock(mu_);
    auto it = batteries_.find(seed);
    if (it != batteries_.end()) return it->second;
  }
  auto battery = std::make_shared<const Battery>(
      create_battery(seed, config_.composition, config_.plate_options));
  // Only the fixed seed repeats, so only it is worth keeping.
  if (config_.fixed_seed && *config_.fixed_seed == seed) {
    std::lock_guard lock(mu_);
    return batteries_.emplace(seed, battery).first->second;
  }
  return battery;
}

std::string SessionService::new_session_id() {
  if (!config_.fixed_seed) return hex_id(random_u64(), random_u64());
  SplitMix64 sm(*config_.fixed_seed ^ 0x5e55105e55105e55ULL);
  std::uint64_t hi = 0, lo = 0;
  for (std::uint64_t i = 0; i <= id_counter_; ++i) {
    hi = sm.next();
    lo = sm.next();
  }
  ++id_counter_;
  return hex_id(hi, lo);
}

void SessionService::replay(const std::vector<Json>& events) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Json& e = events[i];
    const std::string where = config_.state_path + ": line " + std::to_string(i + 1) + ": ";
    try {
      const std::string kind = e.at("event").get<std::string>();
      const std::string id = e.at("session_id").get<std::string>();
      if (kind == "session_created") {
        if (sessions_.count(id)) throw SchemaError("duplicate session " + id);
        const auto seed = e.at("seed").get<std::uint64_t>();
        auto entry = std::make_shared<Entry>(id, battery_for(seed), seed, e.at("created_ms").get<std::int64_t>());
        sessions_.emplace(id, std::move(entry));
        if (config_.fixed_seed) ++id_counter_;
        continue;
      }
      auto it = sessions_.find(id);
      if (it == sessions_.end()) throw SchemaError("unknown session " + id);
      Entry& s = *it->second;
      if (kind == "response") {
        s.session.submit(Response{e.at("plate_id").get<std::string>(), e.at("answer").get<std::string>()});
      } else if (kind == "classified") {
        if (s.session.state() != SessionState::kComplete) throw SchemaError("classified before completion");
        const auto recorded = json_as<Classification>(e.at("classification"), "classification");
        if (recorded != classify(s.session.battery(), s.session.responses())) {
          throw SchemaError("classification does not match the recorded responses");
        }
        s.classification = recorded;
      } else if (kind == "adapted") {
        if (!s.classification) throw SchemaError("adapted before classification");
        if (s.result_body) throw SchemaError("session adapted twice");
        s.result_body = e.at("result").dump();
      } else {
        throw SchemaError("unknown event " + kind);
      }
    } catch (const Error& err) {
      throw SchemaError(where + err.what());
    } catch (const nlohmann::json::exception& err) {
      throw SchemaError(where + err.what());
    }
  }
}

HttpReply SessionService::health() const { return json_reply(200, Json{{"status", "ok"}}); }

HttpReply SessionService::create_session() {
  const std::uint64_t seed = config_.fixed_seed ? *config_.fixed_seed : random_u64();
  std::shared_ptr<const Battery> battery;
  try {
    battery = battery_for(seed);
  } catch (const Error& e) {
    return error_reply(500, std::string("battery generation failed: ") + e.what());
  }
  const std::int64_t now = config_.clock();

  std::lock_guard lock(mu_);
  std::string id = new_session_id();
  while (sessions_.count(id)) id = new_session_id();
  auto entry = std::make_shared<Entry>(id, battery, seed, now);
  log_.append(Json{{"event", "session_created"}, {"session_id", id}, {"seed", seed}, {"created_ms", now}});
  sessions_.emplace(id, entry);
  return json_reply(201, Json{{"session_id", id},
                              {"plate_count", battery->plates.size()},
                              {"first_plate_id", battery->plates.front().id}});
}

HttpReply SessionService::get_plate(const std::string& session_id) {
  auto entry = find(session_id);
  if (!entry) return error_reply(404, "unknown session");
  std::lock_guard lock(entry->mu);
  const IshiharaPlate* plate = entry->session.current_plate();
  if (entry->session.state() != SessionState::kInProgress || !plate) {
    return error_reply(409, "session is " + std::string(to_string(entry->session.state())));
  }
  HttpReply r;
  r.content_type = "image/svg+xml";
  r.body = render_svg(*plate);
  r.headers = {{"X-Plate-Id", plate->id},
               {"X-Plate-Index", std::to_string(entry->session.cursor())},
               {"X-Plate-Total", std::to_string(entry->session.battery().plates.size())}};
  return r;
}

HttpReply SessionService::post_response(const std::string& session_id, const std::string& body) {
  auto entry = find(session_id);
  if (!entry) return error_reply(404, "unknown session");
  std::lock_guard lock(entry->mu);
  TestSession& session = entry->session;
  if (session.state() != SessionState::kInProgress) {
    return error_reply(409, "session is " + std::string(to_string(session.state())));
  }
  std::string answer;
  try {
    const Json j = parse_json(body, "response body");
    if (!j.is_object() || !j.contains("answer") || !j["answer"].is_string()) {
      throw SchemaError("response body needs a string field \"answer\"");
    }
    answer = j["answer"].get<std::string>();
    validate_answer(answer);
  } catch (const Error& e) {
    return error_reply(400, e.what());
  }

  const Response response{session.current_plate()->id, answer};
  log_.append(Json{{"event", "response"},
                   {"session_id", session_id},
                   {"plate_id", response.plate_id},
                   {"answer", response.answer}});
  session.submit(response);

  if (session.state() == SessionState::kInProgress) {
    return json_reply(200, Json{{"done", false}, {"next_plate_id", session.current_plate()->id}});
  }
  Classification c = classify(session.battery(), session.responses());
  log_.append(Json{{"event", "classified"}, {"session_id", session_id}, {"classification", c}});
  entry->classification = std::move(c);
  return json_reply(200, Json{{"done", true}, {"result_ready", true}});
}

HttpReply SessionService::get_result(const std::string& session_id) {
  auto entry = find(session_id);
  if (!entry) return error_reply(404, "unknown session");
  std::lock_guard lock(entry->mu);
  if (!entry->classification) {
    return error_reply(409, "session is " + std::string(to_string(entry->session.state())));
  }
  if (!entry->result_body) {
    const Json result{{"classification", redacted_classification(*entry->classification)},
                      {"adaptation", adaptation_for(*entry->classification)}};
    log_.append(Json{{"event", "adapted"}, {"session_id", session_id}, {"result", result}});
    entry->result_body = result.dump();
  }
  HttpReply r;
  r.body = *entry->result_body;
  return r;
}

Json SessionService::adaptation_for(const Classification& c) const {
  return adapt_for_classification(c, config_.default_palette, config_.catalog, config_.optimize);
}

HttpReply SessionService::adapt(const std::string& body) const {
  Palette palette;
  CVDProfile profile;
  try {
    const Json j = parse_json(body, "adapt body");
    if (!j.is_object() || !j.contains("palette") || !j.contains("profile")) {
      throw SchemaError("adapt body needs \"palette\" and \"profile\"");
    }
    palette = json_as<Palette>(j["palette"], "palette");
    profile = json_as<CVDProfile>(j["profile"], "profile");
    return json_reply(200, Json(optimize_palette(palette, profile, config_.optimize)));
  } catch (const Error& e) {
    return error_reply(400, e.what());
  }
}

HttpReply SessionService::simulate(const std::string& hex, const std::string& kind,
                                   const std::string& severity) const {
  try {
    const SRGB8 color = parse_hex(hex);
    const auto k = parse_cvd_kind(kind);
    if (!k) throw ValidationError("unknown kind \"" + kind + "\"");
    double s = 0;
    const char* end = severity.data() + severity.size();
    const auto [ptr, ec] = std::from_chars(severity.data(), end, s);
    if (severity.empty() || ec != std::errc() || ptr != end) {
      throw ValidationError("bad severity \"" + severity + "\"");
    }
    const SRGB8 out = cvd::simulate(color, CVDProfile(*k, s));
    return json_reply(200, Json{{"hex", strip_hash(to_hex(out))}});
  } catch (const Error& e) {
    return error_reply(400, e.what());
  }
}

std::vector<std::string> SessionService::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, entry] : sessions_) ids.push_back(id);
  return ids;
}

std::optional<SessionSnapshot> SessionService::snapshot(const std::string& session_id) const {
  auto entry = find(session_id);
  if (!entry) return std::nullopt;
  std::lock_guard lock(entry->mu);
  return SessionSnapshot{session_id,
                         entry->seed,
                         entry->created_ms,
                         entry->session.state(),
                         entry->session.responses(),
                         entry->classification,
                         entry->result_body};
}

}  // namespace cvd
