#include "neurosynt/portfolio.hpp"

#include <condition_variable>
#include <mutex>
#include <stop_token>
#include <thread>

#include "neurosynt/aiger.hpp"
#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/service.hpp"

namespace neurosynt::orch {

namespace {

std::optional<double> number(const wire::Parameters& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("parameter '") + key + "' is not a number: " + it->second);
  }
}

wire::Parameters merged(const wire::Parameters& base, const wire::Parameters& over) {
  wire::Parameters out = base;
  for (const auto& [k, v] : over) out[k] = v;
  return out;
}

// The tighter of the caller's deadline and a `timeout` parameter.
Deadline with_timeout(const Deadline& d, const wire::Parameters& p) {
  auto t = number(p, "timeout");
  if (!t) return d;
  return d.min(Deadline::after(Seconds(*t)).at());
}

class BoundedSynthClient : public SolverClient {
 public:
  explicit BoundedSynthClient(wire::Parameters args) : args_(std::move(args)) {}
  const std::string& name() const override { return name_; }
  bool sound() const override { return true; }
  wire::SetupResponse setup(const Deadline&) override { return {true, std::nullopt}; }

  SolverAnswer solve(const wire::SynProblem& problem, const Deadline& deadline) override {
    SolverAnswer a;
    try {
      auto params = merged(args_, problem.parameters);
      auto states = number(params, "max_states").value_or(static_cast<double>(synth::kDefaultMaxStates));
      if (states < 1) throw std::invalid_argument("max_states must be at least 1");
      a.solution = synth::synthesize(problem.decomp_specification, static_cast<std::size_t>(states),
                                     with_timeout(deadline, params));
    } catch (const std::exception& e) {
      a.solution.status = SynStatus::Error;
      a.solution.detailed_status = e.what();
      a.solution.tool = name_;
    }
    return a;
  }

 private:
  std::string name_ = synth::kToolName;
  wire::Parameters args_;
};

class HttpSolverClient : public SolverClient {
 public:
  HttpSolverClient(std::string name, std::string url, bool sound, wire::Parameters args, wire::Parameters setup)
      : name_(std::move(name)), client_(std::move(url)), sound_(sound), args_(std::move(args)),
        setup_(std::move(setup)) {}
  const std::string& name() const override { return name_; }
  bool sound() const override { return sound_; }
  wire::SetupResponse setup(const Deadline& deadline) override { return client_.setup({setup_}, deadline); }

  SolverAnswer solve(const wire::SynProblem& problem, const Deadline& deadline) override {
    wire::SynProblem p = problem;
    p.parameters = merged(args_, problem.parameters);
    SolverAnswer a;
    if (sound_) {
      a.solution = client_.synthesize(p, deadline);
    } else {
      a.unsound = client_.synthesize_unsound(p, deadline);
      a.solution = a.unsound->synthesis_solution;
    }
    if (a.solution.tool.empty()) a.solution.tool = name_;
    return a;
  }

 private:
  std::string name_;
  wire::Client client_;
  bool sound_;
  wire::Parameters args_, setup_;
};

class BuiltinModelChecker : public ModelCheckerClient {
 public:
  explicit BuiltinModelChecker(wire::Parameters args) : args_(std::move(args)) {}
  const std::string& name() const override { return name_; }
  wire::SetupResponse setup(const Deadline&) override { return {true, std::nullopt}; }

  mc::McSolution check(const wire::McProblem& problem, const Deadline& deadline) override {
    mc::McSolution r;
    try {
      auto circuit = aiger::parse_aag(problem.circuit);
      return mc::check(circuit, problem.decomp_specification, problem.realizable,
                       with_timeout(deadline, merged(args_, problem.parameters)));
    } catch (const aiger::AigerError& e) {
      r.status = mc::McStatus::Invalid;
      r.detail = std::string("circuit: ") + e.what();
    } catch (const std::exception& e) {
      r.status = mc::McStatus::Error;
      r.detail = e.what();
    }
    return r;
  }

 private:
  std::string name_ = kBuiltinModelChecker;
  wire::Parameters args_;
};

class HttpModelChecker : public ModelCheckerClient {
 public:
  HttpModelChecker(std::string name, std::string url, wire::Parameters args)
      : name_(std::move(name)), client_(std::move(url)), args_(std::move(args)) {}
  const std::string& name() const override { return name_; }
  wire::SetupResponse setup(const Deadline& deadline) override { return client_.setup({}, deadline); }
  mc::McSolution check(const wire::McProblem& problem, const Deadline& deadline) override {
    wire::McProblem p = problem;
    p.parameters = merged(args_, problem.parameters);
    return client_.model_check(p, deadline);
  }

 private:
  std::string name_;
  wire::Client client_;
  wire::Parameters args_;
};

bool decisive(SynStatus s) { return s == SynStatus::Realizable || s == SynStatus::Unrealizable; }

int failure_rank(const ToolResult& r) {
  if (decisive(r.solution.status)) return 3;  // rejected by the gate
  switch (r.solution.status) {
    case SynStatus::Nonsuccess: return 3;
    case SynStatus::Timeout: return 2;
    default: return 1;
  }
}

ToolResult gate(SolverClient& solver, SolverAnswer answer, const wire::SynProblem& problem,
                ModelCheckerClient& checker, bool verify_symbolic, const Deadline& deadline) {
  ToolResult r;
  r.tool = solver.name();
  r.sound = solver.sound();
  r.solution = std::move(answer.solution);
  r.unsound = std::move(answer.unsound);
  const SynSolution& s = r.solution;
  if (!decisive(s.status)) return r;
  const bool claim = s.status == SynStatus::Realizable;
  if (s.realizable && *s.realizable != claim) return r;
  const bool must_check = !r.sound || verify_symbolic;
  if (!must_check) {
    r.accepted = true;
    return r;
  }
  if (!s.circuit) return r;
  wire::McProblem p{problem.parameters, problem.decomp_specification, *s.circuit, claim};
  p.parameters.erase("timeout");
  r.verification = checker.check(p, deadline);
  r.accepted = r.verification->status == mc::McStatus::Satisfied;
  return r;
}

}  // namespace

std::shared_ptr<SolverClient> make_bounded_synth(wire::Parameters tool_args) {
  return std::make_shared<BoundedSynthClient>(std::move(tool_args));
}

std::shared_ptr<SolverClient> make_http_solver(std::string name, std::string url, bool sound,
                                               wire::Parameters tool_args, wire::Parameters setup_args) {
  return std::make_shared<HttpSolverClient>(std::move(name), std::move(url), sound, std::move(tool_args),
                                            std::move(setup_args));
}

std::shared_ptr<ModelCheckerClient> make_builtin_model_checker(wire::Parameters tool_args) {
  return std::make_shared<BuiltinModelChecker>(std::move(tool_args));
}

std::shared_ptr<ModelCheckerClient> make_http_model_checker(std::string name, std::string url,
                                                            wire::Parameters tool_args) {
  return std::make_shared<HttpModelChecker>(std::move(name), std::move(url), std::move(tool_args));
}

Portfolio make_portfolio(const PortfolioConfig& cfg) {
  Portfolio p;
  p.mode = cfg.mode;
  p.verify_symbolic = cfg.verify_symbolic;
  if (const auto& s = cfg.symbolic_solver) {
    if (auto url = s->url()) p.solvers.push_back(make_http_solver(s->tool, *url, true, s->tool_args, s->tool_setup_args));
    else if (s->tool == synth::kToolName) p.solvers.push_back(make_bounded_synth(s->tool_args));
    else throw PortfolioError("symbolic solver '" + s->tool + "' is not built in and has no service_args.url");
  }
  if (const auto& n = cfg.neural_solver) {
    auto url = n->url();
    if (!url) throw PortfolioError("neural solver '" + n->tool + "' needs service_args.url");
    p.solvers.push_back(make_http_solver(n->tool, *url, false, n->tool_args, n->tool_setup_args));
  }
  if (const auto& m = cfg.model_checker) {
    if (auto url = m->url()) p.model_checker = make_http_model_checker(m->tool, *url, m->tool_args);
    else if (m->tool == kBuiltinModelChecker) p.model_checker = make_builtin_model_checker(m->tool_args);
    else throw PortfolioError("model checker '" + m->tool + "' is not built in and has no service_args.url");
  } else {
    p.model_checker = make_builtin_model_checker();
  }
  return p;
}

void setup_portfolio(const Portfolio& p, const Deadline& deadline) {
  for (const auto& s : p.solvers) {
    auto r = s->setup(deadline);
    if (!r.success) throw PortfolioError("setup of " + s->name() + " failed: " + r.error.value_or("unknown"));
  }
  if (p.model_checker) {
    auto r = p.model_checker->setup(deadline);
    if (!r.success)
      throw PortfolioError("setup of " + p.model_checker->name() + " failed: " + r.error.value_or("unknown"));
  }
}

PortfolioResult run_portfolio(const Portfolio& p, const wire::SynProblem& problem, const Deadline& deadline) {
  const auto start = Clock::now();
  PortfolioResult result;
  if (p.solvers.empty()) throw PortfolioError("no solvers configured");
  if (!p.model_checker) throw PortfolioError("no model checker configured");

  std::stop_source cancel;
  std::optional<std::stop_callback<std::function<void()>>> forward;
  if (deadline.stop_token().stop_possible())
    forward.emplace(deadline.stop_token(), std::function<void()>([&cancel] { cancel.request_stop(); }));
  const Deadline inner(deadline.at(), cancel.get_token());

  const std::size_t n = p.solvers.size();
  std::vector<std::optional<ToolResult>> slots(n);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t finished = 0;
  std::optional<std::size_t> winner;
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < n; ++i) {
      workers.emplace_back([&, i] {
        const auto t0 = Clock::now();
        ToolResult r;
        try {
          auto answer = p.solvers[i]->solve(problem, inner);
          r = gate(*p.solvers[i], std::move(answer), problem, *p.model_checker, p.verify_symbolic, inner);
        } catch (const std::exception& e) {
          r.tool = p.solvers[i]->name();
          r.sound = p.solvers[i]->sound();
          r.solution.status = SynStatus::Error;
          r.solution.detailed_status = e.what();
        }
        r.wall_time = std::chrono::duration_cast<Seconds>(Clock::now() - t0);
        std::lock_guard lock(mu);
        slots[i] = std::move(r);
        ++finished;
        if (slots[i]->accepted && !winner) {
          winner = i;
          if (p.mode == Mode::FastestWins) cancel.request_stop();
        }
        cv.notify_all();
      });
    }
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return finished == n || (p.mode == Mode::FastestWins && winner); });
    lock.unlock();
    cancel.request_stop();
  }  // joins

  for (auto& s : slots) result.all_results.push_back(std::move(*s));
  if (winner) {
    result.chosen = result.all_results[*winner].solution;
    result.chosen_tool = result.all_results[*winner].tool;
  } else {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (failure_rank(result.all_results[i]) > failure_rank(result.all_results[best])) best = i;
    const ToolResult& b = result.all_results[best];
    result.chosen.tool = b.tool;
    result.chosen_tool = b.tool;
    result.chosen.time = b.solution.time;
    if (decisive(b.solution.status)) {
      result.chosen.status = SynStatus::Nonsuccess;
      result.chosen.detailed_status =
          "answer rejected by model checking: " +
          (b.verification ? std::string(mc::to_string(b.verification->status)) : std::string("no circuit to check"));
    } else {
      result.chosen.status = b.solution.status;
      result.chosen.detailed_status = b.solution.detailed_status;
    }
  }
  result.wall_time = std::chrono::duration_cast<Seconds>(Clock::now() - start);
  return result;
}

}  // namespace neurosynt::orch
