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

#include "cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cvdkit/error.hpp"
#include "cvdkit/image.hpp"
#include "cvdkit/serialize.hpp"
#include "cvdkit/service.hpp"

namespace cvd::cli {
namespace {

namespace fs = std::filesystem;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

template <typename T>
T read_json(const std::string& path) {
  return json_as<T>(parse_json(read_text(path), path.c_str()), path.c_str());
}

CVDProfile make_profile(const std::string& kind, double severity) {
  const auto k = parse_cvd_kind(kind);
  if (!k) throw ParameterError("unknown kind '" + kind + "'");
  return CVDProfile(*k, severity);
}

struct ProfileFlags {
  std::string kind;
  double severity = 1.0;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "normal, protan, deutan, tritan or achromat")->required();
    app->add_option("--severity", severity, "in [0,1]")->default_val(1.0);
  }
  CVDProfile profile() const { return make_profile(kind, severity); }
};

// ---- simulate ----

struct SimulateCmd {
  ProfileFlags profile;
  std::string in, out;

  int run(std::ostream&) const {
    const CVDProfile p = profile.profile();
    const Image img = in == "-" ? read_ppm(std::cin) : read_ppm_file(in);
    const Image sim = simulate_image(img, p);
    if (out == "-") {
      write_ppm(std::cout, sim);
      std::cout.flush();
      if (!std::cout) throw IoError("cannot write to stdout");
    } else {
      write_ppm_file(out, sim);
    }
    return kOk;
  }
};

// ---- battery ----

struct BatteryCmd {
  std::uint64_t seed = 0;
  std::string out;

  int run(std::ostream& os) const {
    const Battery battery = create_battery(seed);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create " + out + ": " + ec.message());

    Json key = battery;
    for (std::size_t i = 0; i < battery.plates.size(); ++i) {
      const std::string file = battery.plates[i].id + ".svg";
      write_text(fs::path(out) / file, render_svg(battery.plates[i]));
      key["plates"][i]["svg"] = file;
    }
    write_text(fs::path(out) / "key.json", key.dump(2) + "\n");
    os << Json{{"battery_id", battery.id},
               {"plate_count", battery.plates.size()},
               {"key", (fs::path(out) / "key.json").string()}}
              .dump()
       << "\n";
    return kOk;
  }
};

// ---- respond / classify ----

struct RespondCmd {
  std::string key;
  ProfileFlags profile;

  int run(std::ostream& os) const {
    const CVDProfile p = profile.profile();
    const auto battery = read_json<Battery>(key);
    const ResponseSet set{battery.id, simulated_responses(p, battery)};
    os << Json(set).dump(2) << "\n";
    return kOk;
  }
};

struct ClassifyCmd {
  std::string key, responses;

  int run(std::ostream& os) const {
    const auto battery = read_json<Battery>(key);
    const auto set = read_json<ResponseSet>(responses);
    if (set.battery_id != battery.id) {
      throw MismatchError("responses are for battery " + set.battery_id + ", key is " + battery.id);
    }
    std::set<std::string> seen;
    for (const Response& r : set.responses) {
      if (!battery.find(r.plate_id)) throw MismatchError("response for unknown plate " + r.plate_id);
      if (!seen.insert(r.plate_id).second) throw MismatchError("two responses for plate " + r.plate_id);
    }
    for (const IshiharaPlate& p : battery.plates) {
      if (!seen.count(p.id)) throw MismatchError("no response for plate " + p.id);
    }
    try {
      os << Json(classify(battery, set.responses)).dump(2) << "\n";
    } catch (const ValidationError& e) {
      throw SchemaError(e.what());  // malformed answer strings
    }
    return kOk;
  }
};

// ---- adapt ----

struct AdaptCmd {
  std::string palette, catalog;
  ProfileFlags profile;

  int run(std::ostream& os) const {
    const CVDProfile p = profile.profile();
    const Palette input = load_palette(palette);
    if (catalog.empty()) {
      os << Json(optimize_palette(input, p)).dump(2) << "\n";
      return kOk;
    }
    std::vector<Palette> schemes{input};
    for (Palette& s : load_catalog(catalog)) schemes.push_back(std::move(s));
    const SchemeChoice choice = select_scheme(schemes, p);
    Json j = optimize_palette(schemes[choice.index], p);
    j["scheme_index"] = choice.index;
    j["scheme_name"] = schemes[choice.index].name;
    os << j.dump(2) << "\n";
    return kOk;
  }
};

// ---- serve ----

struct ServeCmd {
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string state, catalog, default_palette, cors_origin = "*", static_dir;
  std::optional<std::uint64_t> seed;

  int run(std::ostream& os, std::ostream& es) const {
    ServiceConfig config;
    config.state_path = state;
    config.fixed_seed = seed;
    config.cors_origin = cors_origin;
    config.static_dir = static_dir;
    if (!catalog.empty()) config.catalog = load_catalog(catalog);
    if (!default_palette.empty()) config.default_palette = load_palette(default_palette);

    std::unique_ptr<SessionService> service;
    try {
      service = std::make_unique<SessionService>(std::move(config));
    } catch (const SchemaError& e) {
      es << "cvdkit serve: unreadable state file: " << e.what() << "\n";
      return kIo;
    }

    // Signals are taken synchronously by one waiter thread; every thread
    // the server starts inherits the blocked mask.
    sigset_t signals, previous;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, &previous);

    HttpServer server(*service);
    if (server.bind(host, port) < 0) {
      pthread_sigmask(SIG_SETMASK, &previous, nullptr);
      es << "cvdkit serve: cannot bind " << host << ":" << port << "\n";
      return kEnvironment;
    }

    std::atomic<bool> stopping{false};
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      stopping = true;
      server.stop();
    });
    os << Json{{"status", "listening"}, {"host", host}, {"port", port},
               {"sessions", service->session_ids().size()}}
              .dump()
       << std::endl;
    const bool ok = server.listen_after_bind();
    if (!stopping) pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    es << "cvdkit serve: stopped\n";
    return ok || stopping ? kOk : kEnvironment;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Color vision screening, simulation and palette adaptation"};
  app.name("cvdkit");
  app.require_subcommand(1);

  SimulateCmd sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a color vision deficiency on a PPM image");
  sim.profile.add(simulate);
  simulate->add_option("--in", sim.in, "P6 PPM input, - for stdin")->required();
  simulate->add_option("--out", sim.out, "P6 PPM output, - for stdout")->required();

  BatteryCmd bat;
  auto* battery = app.add_subcommand("battery", "Write a plate battery as SVGs plus key.json");
  battery->add_option("--seed", bat.seed)->required();
  battery->add_option("--out", bat.out, "output directory")->required();

  RespondCmd resp;
  auto* respond = app.add_subcommand("respond", "Answer a battery as a simulated viewer");
  respond->add_option("--key", resp.key, "key.json from battery")->required();
  resp.profile.add(respond);

  ClassifyCmd cls;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a set of responses");
  classify_cmd->add_option("--key", cls.key, "key.json from battery")->required();
  classify_cmd->add_option("--responses", cls.responses, "responses JSON, - for stdin")->required();

  AdaptCmd adp;
  auto* adapt = app.add_subcommand("adapt", "Adapt a palette to a viewer profile");
  adapt->add_option("--palette", adp.palette, "palette JSON")->required();
  adp.profile.add(adapt);
  adapt->add_option("--catalog", adp.catalog, "directory of alternative palettes");

  ServeCmd srv;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", srv.port)->envname("CVDKIT_PORT")->check(CLI::Range(1, 65535))->default_val(8080);
  serve->add_option("--host", srv.host)->default_val("127.0.0.1");
  serve->add_option("--state", srv.state, "JSON-lines event log")->envname("CVDKIT_STATE");
  serve->add_option("--catalog", srv.catalog, "directory of alternative palettes")->envname("CVDKIT_CATALOG");
  serve->add_option("--default-palette", srv.default_palette, "palette JSON");
  serve->add_option("--seed", srv.seed, "serve every session the battery for this seed");
  serve->add_option("--cors-origin", srv.cors_origin)->default_val("*");
  serve->add_option("--static", srv.static_dir, "directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return sim.run(out);
    if (*battery) return bat.run(out);
    if (*respond) return resp.run(out);
    if (*classify_cmd) return cls.run(out);
    if (*adapt) return adp.run(out);
    if (*serve) return srv.run(out, err);
  } catch (const IoError& e) {
    err << "cvdkit: " << e.what() << "\n";
    return kIo;
  } catch (const MismatchError& e) {
    err << "cvdkit: " << e.what() << "\n";
    return kMismatch;
  } catch (const Error& e) {
    err << "cvdkit: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace cvd::cli
