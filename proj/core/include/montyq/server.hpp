#pragma once

// HTTP+JSON front end over SessionService.
//
//   POST /sessions                  create a session
//   POST /sessions/{id}/pick        {"door": n}
//   POST /sessions/{id}/decision    {"action": "stick"} | {"action": "switch", "door"?: n}
//   GET  /sessions/{id}             session view (no prize information before finish)
//   GET  /stats?game=...            exact analysis + tallies of finished sessions
//   GET  /games                     catalog
//   GET  /analysis?game=...         same envelope as `montyq analyze --json`
//   POST /simulate                  server-side batch of simulated games
//   GET  /health

#include <memory>
#include <optional>
#include <string>

#include "montyq/session.hpp"

namespace httplib {
class Server;
}

namespace montyq::server {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
  std::optional<std::string> static_dir;
  session::SessionConfig sessions;
};

class HttpServer {
 public:
  explicit HttpServer(ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port; throws std::runtime_error on failure.
  int bind();
  // Blocks until stop() is called.
  void serve();
  void stop();
  bool running() const;

  session::SessionService& sessions() { return *service_; }

 private:
  void install_routes();

  ServerOptions options_;
  std::unique_ptr<session::SessionService> service_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace montyq::server
