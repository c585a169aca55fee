#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "neurosynt/config.hpp"
#include "neurosynt/deadline.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/protocol.hpp"
#include "neurosynt/solution.hpp"

namespace neurosynt::orch {

/// Answer of one solver before the soundness gate.
struct SolverAnswer {
  SynSolution solution;
  /// Raw answer of an unsound solver.
  std::optional<wire::UnsoundSynSolution> unsound;
};

class SolverClient {
 public:
  virtual ~SolverClient() = default;
  virtual const std::string& name() const = 0;
  /// Sound solvers' verdicts are trusted; unsound ones are model checked.
  virtual bool sound() const = 0;
  virtual wire::SetupResponse setup(const Deadline& deadline) = 0;
  virtual SolverAnswer solve(const wire::SynProblem& problem, const Deadline& deadline) = 0;
};

class ModelCheckerClient {
 public:
  virtual ~ModelCheckerClient() = default;
  virtual const std::string& name() const = 0;
  virtual wire::SetupResponse setup(const Deadline& deadline) = 0;
  virtual mc::McSolution check(const wire::McProblem& problem, const Deadline& deadline) = 0;
};

/// The built-in bounded synthesizer, run in-process. Reads the `timeout`
/// (seconds) and `max_states` parameters.
std::shared_ptr<SolverClient> make_bounded_synth(wire::Parameters tool_args = {});
/// A symbolic or neural solver behind the wire protocol.
std::shared_ptr<SolverClient> make_http_solver(std::string name, std::string url, bool sound,
                                               wire::Parameters tool_args = {}, wire::Parameters setup_args = {});
/// The built-in model checker, run in-process.
std::shared_ptr<ModelCheckerClient> make_builtin_model_checker(wire::Parameters tool_args = {});
std::shared_ptr<ModelCheckerClient> make_http_model_checker(std::string name, std::string url,
                                                            wire::Parameters tool_args = {});

inline constexpr const char* kBuiltinModelChecker = "neurosynt-mc";

/// Clients for a configuration. Built-in tool names run in-process; any
/// other tool needs `service_args.url`. Throws ConfigError otherwise.
struct Portfolio {
  std::vector<std::shared_ptr<SolverClient>> solvers;
  std::shared_ptr<ModelCheckerClient> model_checker;
  Mode mode = Mode::FastestWins;
  bool verify_symbolic = false;
};
Portfolio make_portfolio(const PortfolioConfig& cfg);

class PortfolioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets up every client; throws PortfolioError naming the first one that fails.
void setup_portfolio(const Portfolio& p, const Deadline& deadline);

struct ToolResult {
  std::string tool;
  bool sound = true;
  SynSolution solution;
  std::optional<wire::UnsoundSynSolution> unsound;
  /// The orchestrator's own model-checking verdict, when it checked.
  std::optional<mc::McSolution> verification;
  /// Passed the soundness gate with a realizable/unrealizable verdict.
  bool accepted = false;
  /// Dispatch until the gate finished (includes verification).
  Seconds wall_time{0};
};

struct PortfolioResult {
  SynSolution chosen;
  std::string chosen_tool;
  std::vector<ToolResult> all_results;
  Seconds wall_time{0};
};

/// Runs every solver concurrently on the problem. A realizable/unrealizable
/// answer is accepted when it comes from a sound solver (and, with
/// `verify_symbolic`, also checks) or when the orchestrator's own model check
/// of its circuit is satisfied. FastestWins returns the first accepted
/// answer and cancels the rest; WaitAll lets every solver finish and still
/// picks the accepted answer that arrived first. Without an accepted answer the
/// chosen status is the most informative failure: nonsuccess, then timeout,
/// then error. Rejected unsound answers count as nonsuccess.
PortfolioResult run_portfolio(const Portfolio& p, const wire::SynProblem& problem, const Deadline& deadline);

}  // namespace neurosynt::orch
