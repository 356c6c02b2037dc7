#pragma once

// JSON session service for interactive proving.
//
//   POST /sessions                   {theorem}                -> {id, revision, state}
//   GET  /sessions/{id}                                       -> {states, steps, metrics, finished, ...}
//   GET  /sessions/{id}/moves?goal=k&level=high|low|all      -> {moves: [...]}
//   POST /sessions/{id}/apply        {move, args, revision}   -> {state, metrics, revision, finished}
//   POST /sessions/{id}/undo         {state_index, revision}  -> {state, metrics, revision, finished}
//   GET  /sessions/{id}/script                                -> script text
//
// Status codes: 404 unknown session, 409 stale revision, 422 engine error,
// 400 malformed request or theorem text.

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "euler/engine.hpp"

namespace httplib {
class Server;
}

namespace euler::service {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ServiceOptions {
  /// When set, every session is written there as a script on shutdown.
  std::optional<std::filesystem::path> snapshot_dir;
};

class ProofService {
 public:
  explicit ProofService(ServiceOptions options = {});
  ~ProofService();
  ProofService(const ProofService&) = delete;
  ProofService& operator=(const ProofService&) = delete;

  Response create_session(std::string_view body);
  Response get_session(const std::string& id) const;
  /// `goal` defaults to 0, `level` to "all".
  Response moves(const std::string& id, std::optional<std::string_view> goal,
                 std::optional<std::string_view> level) const;
  Response apply(const std::string& id, std::string_view body);
  Response undo(const std::string& id, std::string_view body);
  Response script(const std::string& id) const;

  /// Writes every session into the snapshot directory, if configured.
  void snapshot() const;
  std::size_t session_count() const;

 private:
  struct Session {
    std::string id;
    Proof proof;
    std::size_t revision = 0;
    std::chrono::system_clock::time_point created;
    std::chrono::system_clock::time_point updated;
    mutable std::shared_mutex mutex;

    Session(std::string id, Proof proof);
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string fresh_id();

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// Registers the routes on `server`, with CORS headers for `allowed_origin`.
void mount(httplib::Server& server, ProofService& service, const std::string& allowed_origin = "*");

}  // namespace euler::service
