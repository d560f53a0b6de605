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

#ifndef CVDKIT_SERVICE_HPP_
#define CVDKIT_SERVICE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvdkit/adapt.hpp"
#include "cvdkit/screening.hpp"
#include "cvdkit/serialize.hpp"

namespace cvd {

// The palette the app starts with, and the alternative schemes the
// adaptation stage may pick from. All share the same roles.
Palette builtin_default_palette();
std::vector<Palette> builtin_catalog();

// Palette JSON files in `dir`, in file-name order. Throws IoError if the
// directory cannot be read and SchemaError for malformed files.
std::vector<Palette> load_catalog(const std::string& dir);
Palette load_palette(const std::string& path);

struct ServiceConfig {
  std::string state_path;                  // empty: keep state in memory only
  std::optional<std::uint64_t> fixed_seed;  // unset: a fresh random seed per session
  Palette default_palette = builtin_default_palette();
  std::vector<Palette> catalog = builtin_catalog();
  BatteryComposition composition;
  PlateOptions plate_options;
  OptimizeOptions optimize;
  std::string cors_origin = "*";
  std::string static_dir;  // optional web UI bundle served at /
  std::function<std::int64_t()> clock;  // unix milliseconds; defaults to the system clock
};

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

// Append-only JSON-lines journal. Each append is flushed before returning.
class EventLog {
 public:
  EventLog() = default;  // discards events
  explicit EventLog(const std::string& path);

  void append(const Json& event);

  // Every line of `path` parsed as JSON; a missing file yields nothing.
  // Throws IoError if the file exists but cannot be read and SchemaError
  // naming the 1-based line number for an unparsable line.
  static std::vector<Json> load(const std::string& path);

 private:
  std::string path_;
  std::mutex mu_;
};

// Observable state of one session, used to compare a live service with one
// rebuilt from its log.
struct SessionSnapshot {
  std::string id;
  std::uint64_t seed = 0;
  std::int64_t created_ms = 0;
  SessionState state = SessionState::kInProgress;
  std::vector<Response> responses;
  std::optional<Classification> classification;
  std::optional<std::string> result_body;
  friend bool operator==(const SessionSnapshot&, const SessionSnapshot&) = default;
};

// Transport-independent implementation of the HTTP API. Each handler
// returns the reply the server sends verbatim. Thread-safe: mutations of one
// session are serialized, different sessions proceed independently.
class SessionService {
 public:
  // Replays the state file, if any. Throws IoError or SchemaError (with the
  // line number) when the log cannot be replayed.
  explicit SessionService(ServiceConfig config);
  ~SessionService();

  HttpReply health() const;
  HttpReply create_session();
  HttpReply get_plate(const std::string& session_id);
  HttpReply post_response(const std::string& session_id, const std::string& body);
  HttpReply get_result(const std::string& session_id);
  HttpReply adapt(const std::string& body) const;
  HttpReply simulate(const std::string& hex, const std::string& kind, const std::string& severity) const;

  std::vector<std::string> session_ids() const;
  std::optional<SessionSnapshot> snapshot(const std::string& session_id) const;
  const ServiceConfig& config() const { return config_; }

 private:
  struct Entry;

  std::shared_ptr<Entry> find(const std::string& id) const;
  std::shared_ptr<const Battery> battery_for(std::uint64_t seed);
  std::string new_session_id();
  void replay(const std::vector<Json>& events);
  Json adaptation_for(const Classification& c) const;

  ServiceConfig config_;
  EventLog log_;
  mutable std::mutex mu_;  // guards sessions_, batteries_ and id_rng_
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::map<std::uint64_t, std::shared_ptr<const Battery>> batteries_;
  std::uint64_t id_counter_ = 0;
};

// Picks the scheme for a classification and adapts it: select among the
// default palette followed by the catalog, then optimize the winner. Normal
// viewers keep the default palette; Unclassified viewers keep it too and are
// flagged for a retest.
Json adapt_for_classification(const Classification& c, const Palette& default_palette,
                              const std::vector<Palette>& catalog, const OptimizeOptions& options);

// Minimal HTTP/1.1 front end for SessionService.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound
  // port or -1 when binding fails.
  int bind(const std::string& host, int port);
  // Serves until stop() is called; returns false on failure.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cvd

#endif  // CVDKIT_SERVICE_HPP_
