#include "montyq/server.hpp"

#include <httplib.h>

#include "montyq/envelope.hpp"

namespace montyq::server {

using serialize::Json;

namespace {

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", message}, {"status", status}}, status);
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw session::ApiError(400, std::string("malformed JSON body: ") + e.what());
  }
}

catalog::GameRequest request_from_query(const httplib::Request& req) {
  if (!req.has_param("game")) throw session::ApiError(400, "missing query parameter 'game'");
  Json j{{"game", req.get_param_value("game")}};
  for (const char* key : {"q1", "q2", "q3", "state"})
    if (req.has_param(key)) j[key] = req.get_param_value(key);
  try {
    return catalog::request_from_json(j);
  } catch (const std::exception& e) {
    throw session::ApiError(400, e.what());
  }
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const session::ApiError& e) {
      send_error(res, e.status(), e.what());
    } catch (const std::invalid_argument& e) {
      send_error(res, 400, e.what());
    } catch (const std::out_of_range& e) {
      send_error(res, 400, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

}  // namespace

HttpServer::HttpServer(ServerOptions options)
    : options_(std::move(options)),
      service_(std::make_unique<session::SessionService>(options_.sessions)),
      http_(std::make_unique<httplib::Server>()) {
  http_->set_tcp_nodelay(true);
  install_routes();
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::install_routes() {
  auto& svc = *service_;
  auto& http = *http_;

  http.Post("/sessions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.create(parse_body(req)), 201);
  }));
  http.Post(R"(/sessions/([0-9a-f]+)/pick)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.pick(req.matches[1], parse_body(req)));
  }));
  http.Post(R"(/sessions/([0-9a-f]+)/decision)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.decide(req.matches[1], parse_body(req)));
  }));
  http.Get(R"(/sessions/([0-9a-f]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.get(req.matches[1]));
  }));
  http.Get("/stats", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.stats(request_from_query(req)));
  }));
  http.Get("/games", guarded([](const httplib::Request&, httplib::Response& res) {
    send_json(res, catalog::catalog_json());
  }));
  http.Get("/analysis", guarded([](const httplib::Request& req, httplib::Response& res) {
    const auto request = request_from_query(req);
    try {
      send_json(res, to_json(analysis_envelope(request)));
    } catch (const catalog::UnknownGame& e) {
      throw session::ApiError(400, e.what());
    }
  }));
  http.Post("/simulate", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, svc.simulate(parse_body(req)));
  }));
  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, {{"status", "ok"}, {"version", version()}});
  });

  if (options_.static_dir && !http.set_mount_point("/", *options_.static_dir))
    throw std::runtime_error("static directory not found: " + *options_.static_dir);
}

int HttpServer::bind() {
  int port = options_.port;
  if (port == 0) {
    port = http_->bind_to_any_port(options_.host);
  } else if (!http_->bind_to_port(options_.host, port)) {
    port = -1;
  }
  if (port < 0) throw std::runtime_error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  options_.port = port;
  return port;
}

void HttpServer::serve() { http_->listen_after_bind(); }

void HttpServer::stop() {
  if (http_) http_->stop();
}

bool HttpServer::running() const { return http_->is_running(); }

}  // namespace montyq::server
