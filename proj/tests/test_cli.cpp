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

#include <signal.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "cli.hpp"
#include "cvdkit/image.hpp"
#include "cvdkit/rng.hpp"
#include "cvdkit/serialize.hpp"
#include "cvdkit/service.hpp"

using namespace cvd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cvdkit(std::vector<std::string> args) {
  args.insert(args.begin(), "cvdkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cvdkit-cli-" + std::to_string(Rng(std::random_device{}()).below(1u << 30)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

// One battery shared by the tests below.
const TempDir& battery_dir() {
  static TempDir dir;
  static const Run r = cvdkit({"battery", "--seed", "21", "--out", dir / "b"});
  REQUIRE(r.code == 0);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
  CHECK(cvdkit({}).code == 2);
  CHECK(cvdkit({"frobnicate"}).code == 2);
  CHECK(cvdkit({"battery", "--seed", "x", "--out", "/tmp/x"}).code == 2);
  CHECK(cvdkit({"respond", "--key", "k.json"}).code == 2);
  CHECK(cvdkit({"--help"}).code == 0);
}

TEST_CASE("simulate keeps grays and identity profiles byte exact") {
  TempDir dir;
  Rng rng(1);
  std::vector<SRGB8> gray(64), colors(64);
  for (std::size_t i = 0; i < 64; ++i) {
    const auto v = static_cast<std::uint8_t>(rng.below(256));
    gray[i] = {v, v, v};
    colors[i] = {static_cast<std::uint8_t>(rng.below(256)), v, static_cast<std::uint8_t>(rng.below(256))};
  }
  write_ppm_file(dir / "gray.ppm", Image(8, 8, gray));
  write_ppm_file(dir / "colors.ppm", Image(8, 8, colors));

  REQUIRE(cvdkit({"simulate", "--kind", "protan", "--severity", "1", "--in", dir / "gray.ppm", "--out", dir / "g2.ppm"}).code == 0);
  CHECK(slurp(dir / "gray.ppm") == slurp(dir / "g2.ppm"));
  REQUIRE(cvdkit({"simulate", "--kind", "deutan", "--severity", "0", "--in", dir / "colors.ppm", "--out", dir / "c2.ppm"}).code == 0);
  CHECK(slurp(dir / "colors.ppm") == slurp(dir / "c2.ppm"));
}

TEST_CASE("simulate narrows a red/green swatch pair") {
  TempDir dir;
  std::vector<SRGB8> strip;
  for (int i = 0; i < 24; ++i) strip.push_back({static_cast<std::uint8_t>(i * 11), static_cast<std::uint8_t>(255 - i * 11), 60});
  strip[0] = {220, 30, 30};
  strip[1] = {30, 180, 30};
  write_ppm_file(dir / "strip.ppm", Image(24, 1, strip));
  REQUIRE(cvdkit({"simulate", "--kind", "deutan", "--in", dir / "strip.ppm", "--out", dir / "sim.ppm"}).code == 0);
  const Image sim = read_ppm_file(dir / "sim.ppm");
  const Palette before{"in", {{"red", strip[0]}, {"green", strip[1]}}};
  const Palette after{"out", {{"red", sim.at(0, 0)}, {"green", sim.at(1, 0)}}};
  CHECK(score_palette(after, CVDProfile::normal()) < score_palette(before, CVDProfile::normal()));
}

TEST_CASE("simulate errors") {
  TempDir dir;
  CHECK(cvdkit({"simulate", "--kind", "deutan", "--in", dir / "none.ppm", "--out", dir / "o.ppm"}).code == 3);
  spit(dir / "bad.ppm", "P3\n1 1\n255\n0 0 0\n");
  CHECK(cvdkit({"simulate", "--kind", "deutan", "--in", dir / "bad.ppm", "--out", dir / "o.ppm"}).code == 3);
  write_ppm_file(dir / "ok.ppm", Image(1, 1, SRGB8{1, 2, 3}));
  CHECK(cvdkit({"simulate", "--kind", "purple", "--in", dir / "ok.ppm", "--out", dir / "o.ppm"}).code == 2);
  CHECK(cvdkit({"simulate", "--kind", "deutan", "--severity", "2", "--in", dir / "ok.ppm", "--out", dir / "o.ppm"}).code == 2);
  CHECK(cvdkit({"simulate", "--kind", "deutan", "--in", dir / "ok.ppm", "--out", dir / "no/such/dir/o.ppm"}).code == 3);
}

TEST_CASE("battery output") {
  const TempDir& dir = battery_dir();
  const Json key = Json::parse(slurp(dir / "b/key.json"));
  CHECK(key["plates"].size() == 17);
  for (const Json& p : key["plates"]) CHECK(fs::exists(dir.path / "b" / p["svg"].get<std::string>()));

  TempDir again;
  REQUIRE(cvdkit({"battery", "--seed", "21", "--out", again / "b"}).code == 0);
  CHECK(slurp(again / "b/key.json") == slurp(dir / "b/key.json"));

  spit(again / "file", "x");
  CHECK(cvdkit({"battery", "--seed", "21", "--out", again / "file/sub"}).code == 3);
}

TEST_CASE("respond and classify") {
  const TempDir& dir = battery_dir();
  const std::string key = dir / "b/key.json";

  const Run normal = cvdkit({"respond", "--key", key, "--kind", "normal", "--severity", "0"});
  REQUIRE(normal.code == 0);
  CHECK(normal.out == cvdkit({"respond", "--key", key, "--kind", "normal", "--severity", "0"}).out);
  const Json k = Json::parse(slurp(key));
  const Json r = Json::parse(normal.out);
  for (std::size_t i = 0; i < k["plates"].size(); ++i) {
    CHECK(r["responses"][i]["answer"] == k["plates"][i]["answer_key"]["normal"]);
  }
  spit(dir / "normal.json", normal.out);
  const Run cn = cvdkit({"classify", "--key", key, "--responses", dir / "normal.json"});
  REQUIRE(cn.code == 0);
  CHECK(Json::parse(cn.out)["kind"] == "normal");

  const Run deutan = cvdkit({"respond", "--key", key, "--kind", "deutan", "--severity", "1"});
  const Json d = Json::parse(deutan.out);
  for (std::size_t i = 0; i < k["plates"].size(); ++i) {
    const Json& design = k["plates"][i]["design"];
    if (design["kind"] == "vanishing" && design["target"] == "deutan" && design["difficulty"] == 0.0) {
      CHECK(d["responses"][i]["answer"] == "");
    }
  }
  spit(dir / "deutan.json", deutan.out);
  CHECK(Json::parse(cvdkit({"classify", "--key", key, "--responses", dir / "deutan.json"}).out)["kind"] == "deutan");

  CHECK(cvdkit({"respond", "--key", key, "--kind", "deutan", "--severity", "7"}).code == 2);
}

TEST_CASE("classify exit codes") {
  const TempDir& dir = battery_dir();
  const std::string key = dir / "b/key.json";
  Json r = Json::parse(cvdkit({"respond", "--key", key, "--kind", "normal", "--severity", "0"}).out);

  Json missing = r;
  missing["responses"].erase(missing["responses"].size() - 1);
  spit(dir / "missing.json", missing.dump());
  CHECK(cvdkit({"classify", "--key", key, "--responses", dir / "missing.json"}).code == 4);

  Json other = r;
  other["battery_id"] = "battery-0000000000000000";
  spit(dir / "other.json", other.dump());
  CHECK(cvdkit({"classify", "--key", key, "--responses", dir / "other.json"}).code == 4);

  Json malformed = r;
  malformed["responses"][0]["answer"] = "ab";
  spit(dir / "malformed.json", malformed.dump());
  CHECK(cvdkit({"classify", "--key", key, "--responses", dir / "malformed.json"}).code == 2);

  spit(dir / "schema.json", R"({"responses":[]})");
  CHECK(cvdkit({"classify", "--key", key, "--responses", dir / "schema.json"}).code == 2);
  spit(dir / "garbage.json", "{{");
  CHECK(cvdkit({"classify", "--key", key, "--responses", dir / "garbage.json"}).code == 2);
  CHECK(cvdkit({"classify", "--key", dir / "nokey.json", "--responses", dir / "garbage.json"}).code == 3);
}

TEST_CASE("adapt") {
  TempDir dir;
  const Palette rg{"rg", {{"red", {255, 0, 0}}, {"green", {0, 255, 0}}}};
  spit(dir / "rg.json", Json(rg).dump());

  const Run n = cvdkit({"adapt", "--palette", dir / "rg.json", "--kind", "normal", "--severity", "0"});
  REQUIRE(n.code == 0);
  CHECK(json_as<Palette>(Json::parse(n.out)["adapted"], "p") == rg);

  const Run d = cvdkit({"adapt", "--palette", dir / "rg.json", "--kind", "deutan", "--severity", "1"});
  REQUIRE(d.code == 0);
  const Json j = Json::parse(d.out);
  CHECK(j["final_score"].get<double>() > j["initial_score"].get<double>());
  const auto trace = j["objective_trace"].get<std::vector<double>>();
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1]);

  fs::create_directories(dir.path / "catalog");
  spit(dir / "catalog/bo.json", Json(Palette{"bo", {{"red", {0, 114, 178}}, {"green", {230, 159, 0}}}}).dump());
  const Run c = cvdkit({"adapt", "--palette", dir / "rg.json", "--kind", "deutan", "--catalog", dir / "catalog"});
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["scheme_index"] == 1);
  CHECK(Json::parse(c.out)["scheme_name"] == "bo");

  spit(dir / "bad.json", R"({"name":"x","colors":[{"role":"a","srgb":"#000000"}]})");
  CHECK(cvdkit({"adapt", "--palette", dir / "bad.json", "--kind", "deutan"}).code == 2);
  CHECK(cvdkit({"adapt", "--palette", dir / "none.json", "--kind", "deutan"}).code == 3);
}

TEST_CASE("serve") {
  TempDir dir;
  const int port = 20000 + static_cast<int>(Rng(std::random_device{}()).below(20000));
  const std::string state = dir / "state.jsonl";

  // The server takes SIGTERM synchronously; keep it away from this thread.
  sigset_t set, old;
  sigemptyset(&set);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, &old);

  Run served{};
  std::thread t([&] { served = cvdkit({"serve", "--port", std::to_string(port), "--state", state, "--seed", "5"}); });
  httplib::Client cli("127.0.0.1", port);
  httplib::Result health;
  for (int i = 0; i < 100 && !health; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    health = cli.Get("/api/health");
  }
  REQUIRE(health);
  CHECK(Json::parse(health->body)["status"] == "ok");
  REQUIRE(cli.Post("/api/sessions", "", "application/json"));

  CHECK(cvdkit({"serve", "--port", std::to_string(port)}).code == 5);

  kill(getpid(), SIGTERM);
  t.join();
  pthread_sigmask(SIG_SETMASK, &old, nullptr);
  CHECK(served.code == 0);
  CHECK(Json::parse(served.out.substr(0, served.out.find('\n')))["status"] == "listening");

  // Restarting with the same state file restores the session.
  ServiceConfig config;
  config.state_path = state;
  config.fixed_seed = 5;
  CHECK(SessionService(config).session_ids().size() == 1);

  std::ofstream(state, std::ios::app) << "not json\n";
  const Run broken = cvdkit({"serve", "--port", std::to_string(port), "--state", state});
  CHECK(broken.code == 3);
  CHECK(broken.err.find("line 2") != std::string::npos);

  CHECK(cvdkit({"serve", "--port", "0"}).code == 2);
  CHECK(cvdkit({"serve", "--port", "70000"}).code == 2);
}

}  // TEST_SUITE
