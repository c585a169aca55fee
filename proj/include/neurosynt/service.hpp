#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neurosynt/deadline.hpp"
#include "neurosynt/protocol.hpp"

namespace neurosynt::wire {

enum class Role { Symbolic, Neural, ModelChecker };

std::string_view to_string(Role r);
/// Accepts "symbolic", "neural", "mc".
Role parse_role(std::string_view s);

/// One HTTP exchange as seen by a server.
struct LogEntry {
  Clock::time_point at;
  std::string service;
  std::string endpoint;  // "/setup", "/synthesize", "/model-check"
  bool response = false;
  bool ok = true;
  std::string problem;  // the "problem_id" parameter, when given
};

/// Append-only, thread-safe record shared by the services of one run.
class MessageLog {
 public:
  void record(LogEntry e);
  std::vector<LogEntry> entries() const;
  void clear();

 private:
  mutable std::mutex mu_;
  std::vector<LogEntry> entries_;
};

/// Request handlers. Only the ones matching the role are consulted; a
/// missing setup handler accepts every setup. Handlers receive a deadline
/// derived from the `timeout` parameter (seconds) and the server's shutdown.
struct Handlers {
  std::function<SetupResponse(const SetupRequest&)> setup;
  std::function<SynSolution(const SynProblem&, const Deadline&)> synthesize;
  std::function<UnsoundSynSolution(const SynProblem&, const Deadline&)> synthesize_unsound;
  std::function<mc::McSolution(const McProblem&, const Deadline&)> model_check;
};

/// JSON-over-HTTP service: POST /setup, POST /synthesize (symbolic and
/// neural), POST /model-check (mc), GET /health. Problem requests before a
/// successful setup are rejected with HTTP 409.
class Server {
 public:
  Server(Role role, std::string name, Handlers handlers, std::shared_ptr<MessageLog> log = nullptr);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds (port 0 picks a free port) and serves on a background thread.
  /// Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

  int port() const;
  std::string url() const;
  Role role() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class CallError : public std::runtime_error {
 public:
  enum class Kind { ConnectionRefused, DeadlineExceeded, ProtocolError };
  CallError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Client for one service base URL (`http://host:port`). Calls are blocking,
/// bounded by the deadline, and abort promptly when its stop token fires.
class Client {
 public:
  explicit Client(std::string url);

  /// Raw exchange; throws CallError.
  nlohmann::json call(std::string_view endpoint, const nlohmann::json& body, const Deadline& deadline) const;

  // Typed calls never throw: failures become error/timeout answers whose
  // detailed status explains the transport problem.
  SetupResponse setup(const SetupRequest& req, const Deadline& deadline) const;
  SynSolution synthesize(const SynProblem& p, const Deadline& deadline) const;
  UnsoundSynSolution synthesize_unsound(const SynProblem& p, const Deadline& deadline) const;
  mc::McSolution model_check(const McProblem& p, const Deadline& deadline) const;
  bool health(const Deadline& deadline) const;

  const std::string& url() const { return url_; }

 private:
  std::string url_;
};

}  // namespace neurosynt::wire
