// service.hpp
//
// Human-vs-AI play sessions over HTTP/JSON. SessionStore holds the sessions
// and answers requests independently of the transport; serve() and
// HttpService put it behind cpp-httplib.
//
//   POST   /sessions                  create; the AI moves until it is the human's turn
//   GET    /sessions/{id}             state, legal moves, capture flag, outcome
//   POST   /sessions/{id}/move        human move, then the AI reply
//   GET    /sessions/{id}/transcript  JSON lines, as written by Transcript::to_jsonl
//   DELETE /sessions/{id}
//
// Errors are {"error": reason} with 400 (bad request or illegal move), 404
// (unknown session or route) and 409 (game over or stale ply).

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

namespace httplib {
class Server;
}

namespace pdcr {

inline constexpr int kSessionSchemaVersion = 1;

struct Reply {
  int status = 200;
  nlohmann::json body;
};

class Session;

class SessionStore {
 public:
  SessionStore();
  ~SessionStore();

  /// `path` excludes the query string. Never throws.
  Reply handle(const std::string& method, const std::string& path, const std::string& body);

  Reply create(const nlohmann::json& request);
  Reply get(const std::string& id);
  Reply move(const std::string& id, const nlohmann::json& request);
  Reply transcript(const std::string& id);
  Reply remove(const std::string& id);

  std::size_t size() const;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  long long next_id_ = 1;
};

/// A running server on 127.0.0.1 (or `host`), for embedding and tests.
class HttpService {
 public:
  explicit HttpService(SessionStore& store);
  ~HttpService();

  /// Binds (port 0 picks a free one) and serves on a background thread.
  /// Returns the bound port; throws std::runtime_error when binding fails.
  int start(int port = 0, const std::string& host = "127.0.0.1");
  void stop();
  /// Blocks until the server stops.
  void wait();

 private:
  SessionStore& store_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

/// Blocks serving until the process is stopped.
void serve(int port, const std::string& host = "127.0.0.1");

}  // namespace pdcr
