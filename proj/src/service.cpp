#include "neurosynt/service.hpp"

#include <atomic>
#include <optional>
#include <stop_token>
#include <thread>

#include <httplib.h>

namespace neurosynt::wire {

using nlohmann::json;

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Symbolic: return "symbolic";
    case Role::Neural: return "neural";
    case Role::ModelChecker: return "mc";
  }
  return "symbolic";
}

Role parse_role(std::string_view s) {
  if (s == "symbolic") return Role::Symbolic;
  if (s == "neural") return Role::Neural;
  if (s == "mc") return Role::ModelChecker;
  throw std::invalid_argument("unknown service role '" + std::string(s) + "'");
}

void MessageLog::record(LogEntry e) {
  std::lock_guard lock(mu_);
  entries_.push_back(std::move(e));
}

std::vector<LogEntry> MessageLog::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

void MessageLog::clear() {
  std::lock_guard lock(mu_);
  entries_.clear();
}

// ---------------------------------------------------------------------------
// Server.

struct Server::Impl {
  Role role;
  std::string name;
  Handlers handlers;
  std::shared_ptr<MessageLog> log;
  httplib::Server http;
  std::thread thread;
  std::atomic<bool> ready{false};
  std::stop_source shutdown;
  std::string host = "127.0.0.1";
  int port = 0;

  void note(const std::string& endpoint, bool response, bool ok, const Parameters& params) {
    if (!log) return;
    auto it = params.find("problem_id");
    log->record({Clock::now(), name, endpoint, response, ok, it == params.end() ? "" : it->second});
  }

  Deadline deadline_for(const Parameters& params) const {
    auto it = params.find("timeout");
    if (it == params.end()) return Deadline::never(shutdown.get_token());
    try {
      return Deadline::after(Seconds(std::stod(it->second)), shutdown.get_token());
    } catch (const std::exception&) {
      return Deadline::never(shutdown.get_token());
    }
  }

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  // Decodes the problem, enforces setup, and runs `handle`.
  template <class Problem, class Handle>
  void problem_route(const std::string& endpoint, const httplib::Request& req, httplib::Response& res,
                     Handle&& handle) {
    Problem p;
    try {
      p = decode<Problem>(req.body);
    } catch (const DecodeError& e) {
      reply(res, 400, {{"error", e.what()}, {"field", e.field()}});
      return;
    }
    if (!ready) {
      note(endpoint, false, false, p.parameters);
      reply(res, 409, {{"error", "setup required before " + endpoint}});
      return;
    }
    note(endpoint, false, true, p.parameters);
    json out = handle(p, deadline_for(p.parameters));
    note(endpoint, true, true, p.parameters);
    reply(res, 200, out);
  }

  void install() {
    http.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"status", "ok"}, {"role", std::string(to_string(role))}, {"ready", ready.load()}});
    });

    http.Post("/setup", [this](const httplib::Request& req, httplib::Response& res) {
      SetupRequest r;
      try {
        r = decode<SetupRequest>(req.body);
      } catch (const DecodeError& e) {
        reply(res, 400, {{"error", e.what()}, {"field", e.field()}});
        return;
      }
      note("/setup", false, true, r.parameters);
      SetupResponse out{true, std::nullopt};
      if (handlers.setup) {
        try {
          out = handlers.setup(r);
        } catch (const std::exception& e) {
          out = {false, e.what()};
        }
      }
      if (out.success) ready = true;
      note("/setup", true, out.success, r.parameters);
      reply(res, 200, to_json(out));
    });

    if (role == Role::ModelChecker) {
      http.Post("/model-check", [this](const httplib::Request& req, httplib::Response& res) {
        problem_route<McProblem>("/model-check", req, res, [this](const McProblem& p, const Deadline& d) {
          mc::McSolution s;
          try {
            if (!handlers.model_check) throw std::runtime_error("no model checker installed");
            s = handlers.model_check(p, d);
          } catch (const std::exception& e) {
            s.status = mc::McStatus::Error;
            s.detail = e.what();
          }
          return to_json(s);
        });
      });
      return;
    }

    http.Post("/synthesize", [this](const httplib::Request& req, httplib::Response& res) {
      problem_route<SynProblem>("/synthesize", req, res, [this](const SynProblem& p, const Deadline& d) {
        if (role == Role::Neural) {
          UnsoundSynSolution s;
          try {
            if (!handlers.synthesize_unsound) throw std::runtime_error("no solver installed");
            s = handlers.synthesize_unsound(p, d);
          } catch (const std::exception& e) {
            s.synthesis_solution.status = SynStatus::Error;
            s.synthesis_solution.detailed_status = e.what();
          }
          return to_json(s);
        }
        SynSolution s;
        try {
          if (!handlers.synthesize) throw std::runtime_error("no solver installed");
          s = handlers.synthesize(p, d);
        } catch (const std::exception& e) {
          s.status = SynStatus::Error;
          s.detailed_status = e.what();
        }
        return to_json(s);
      });
    });
  }
};

Server::Server(Role role, std::string name, Handlers handlers, std::shared_ptr<MessageLog> log)
    : impl_(std::make_unique<Impl>()) {
  impl_->role = role;
  impl_->name = std::move(name);
  impl_->handlers = std::move(handlers);
  impl_->log = std::move(log);
  impl_->install();
}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (impl_->port < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return impl_->port;
}

void Server::run(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port;
  if (!impl_->http.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

void Server::stop() {
  if (!impl_) return;
  impl_->shutdown.request_stop();
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Server::port() const { return impl_->port; }
std::string Server::url() const { return "http://" + impl_->host + ":" + std::to_string(impl_->port); }
Role Server::role() const { return impl_->role; }

// ---------------------------------------------------------------------------
// Client.

Client::Client(std::string url) : url_(std::move(url)) {
  while (!url_.empty() && url_.back() == '/') url_.pop_back();
}

json Client::call(std::string_view endpoint, const json& body, const Deadline& deadline) const {
  if (deadline.expired()) throw CallError(CallError::Kind::DeadlineExceeded, "deadline passed before the call");
  httplib::Client cli(url_);
  auto budget = std::min(deadline.remaining(), Seconds(24 * 3600.0));
  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(budget);
  if (timeout.count() < 1000) timeout = std::chrono::microseconds(1000);
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);

  std::optional<std::stop_callback<std::function<void()>>> abort;
  if (deadline.stop_token().stop_possible())
    abort.emplace(deadline.stop_token(), std::function<void()>([&cli] { cli.stop(); }));
  if (deadline.cancelled()) throw CallError(CallError::Kind::DeadlineExceeded, "cancelled");

  const std::string path(endpoint);
  auto res = body.is_null() ? cli.Get(path) : cli.Post(path, body.dump(), "application/json");
  abort.reset();
  if (!res) {
    if (deadline.expired()) throw CallError(CallError::Kind::DeadlineExceeded, "deadline exceeded calling " + path);
    if (res.error() == httplib::Error::Connection)
      throw CallError(CallError::Kind::ConnectionRefused, "cannot connect to " + url_);
    throw CallError(CallError::Kind::ProtocolError, path + ": " + httplib::to_string(res.error()));
  }
  json out;
  try {
    out = json::parse(res->body);
  } catch (const json::parse_error&) {
    throw CallError(CallError::Kind::ProtocolError, path + ": response is not JSON");
  }
  if (res->status != 200) {
    std::string why = out.is_object() && out.contains("error") ? out["error"].dump() : res->body;
    throw CallError(CallError::Kind::ProtocolError, path + ": HTTP " + std::to_string(res->status) + " " + why);
  }
  return out;
}

SetupResponse Client::setup(const SetupRequest& req, const Deadline& deadline) const {
  try {
    return from_json<SetupResponse>(call("/setup", to_json(req), deadline));
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

namespace {

template <class Fn>
auto failure_status(const std::exception& e, Fn&& make) {
  if (const auto* c = dynamic_cast<const CallError*>(&e); c && c->kind() == CallError::Kind::DeadlineExceeded)
    return make(true, e.what());
  return make(false, std::string("service failure: ") + e.what());
}

}  // namespace

SynSolution Client::synthesize(const SynProblem& p, const Deadline& deadline) const {
  try {
    return from_json<SynSolution>(call("/synthesize", to_json(p), deadline));
  } catch (const std::exception& e) {
    return failure_status(e, [](bool timeout, std::string why) {
      SynSolution s;
      s.status = timeout ? SynStatus::Timeout : SynStatus::Error;
      s.detailed_status = std::move(why);
      return s;
    });
  }
}

UnsoundSynSolution Client::synthesize_unsound(const SynProblem& p, const Deadline& deadline) const {
  try {
    return from_json<UnsoundSynSolution>(call("/synthesize", to_json(p), deadline));
  } catch (const std::exception& e) {
    return failure_status(e, [](bool timeout, std::string why) {
      UnsoundSynSolution s;
      s.synthesis_solution.status = timeout ? SynStatus::Timeout : SynStatus::Error;
      s.synthesis_solution.detailed_status = std::move(why);
      return s;
    });
  }
}

mc::McSolution Client::model_check(const McProblem& p, const Deadline& deadline) const {
  try {
    return from_json<mc::McSolution>(call("/model-check", to_json(p), deadline));
  } catch (const std::exception& e) {
    return failure_status(e, [](bool timeout, std::string why) {
      mc::McSolution s;
      s.status = timeout ? mc::McStatus::Timeout : mc::McStatus::Error;
      s.detail = std::move(why);
      return s;
    });
  }
}

bool Client::health(const Deadline& deadline) const {
  try {
    return call("/health", json(), deadline).value("status", "") == "ok";
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace neurosynt::wire
