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

#include <httplib.h>

#include "cvdkit/service.hpp"

namespace cvd {

struct HttpServer::Impl {
  SessionService& service;
  httplib::Server server;

  explicit Impl(SessionService& s) : service(s) {}

  static void send(httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    for (const auto& [name, value] : reply.headers) res.set_header(name, value);
    res.set_content(reply.body, reply.content_type);
  }

  void routes() {
    // SO_REUSEADDR only: a second server on a taken port must fail to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    const std::string origin = service.config().cors_origin;
    if (!origin.empty()) {
      server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"},
                                  {"Access-Control-Expose-Headers", "X-Plate-Id, X-Plate-Index, X-Plate-Total"}});
    }
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      send(res, service.health());
    });
    server.Post("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
      send(res, service.create_session());
    });
    server.Get("/api/sessions/:id/plate", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.get_plate(req.path_params.at("id")));
    });
    server.Post("/api/sessions/:id/response", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.post_response(req.path_params.at("id"), req.body));
    });
    server.Get("/api/sessions/:id/result", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.get_result(req.path_params.at("id")));
    });
    server.Post("/api/adapt", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.adapt(req.body));
    });
    server.Get("/api/simulate", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.simulate(req.get_param_value("hex"), req.get_param_value("kind"),
                                 req.get_param_value("severity")));
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      res.status = 500;
      res.set_content(Json{{"error", what}}.dump(), "application/json");
    });

    if (!service.config().static_dir.empty()) server.set_mount_point("/", service.config().static_dir);
  }
};

HttpServer::HttpServer(SessionService& service) : impl_(std::make_unique<Impl>(service)) { impl_->routes(); }

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cvd
