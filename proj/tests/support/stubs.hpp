// Scripted services speaking the wire protocol, for portfolio tests.
#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "neurosynt/aiger.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/service.hpp"

namespace stubs {

using namespace neurosynt;

/// Sleeps in 5 ms slices, giving up when the deadline passes.
inline bool wait_for(std::chrono::milliseconds delay, const Deadline& d) {
  const auto until = Clock::now() + delay;
  while (Clock::now() < until) {
    if (d.expired()) return false;
    std::this_thread::sleep_for(std::min<Clock::duration>(std::chrono::milliseconds(5), until - Clock::now()));
  }
  return true;
}

/// Symbolic solver that answers `answer` after `delay`.
inline wire::Handlers symbolic(std::chrono::milliseconds delay, SynSolution answer) {
  wire::Handlers h;
  h.synthesize = [delay, answer](const wire::SynProblem&, const Deadline& d) {
    if (!wait_for(delay, d)) {
      SynSolution t;
      t.status = SynStatus::Timeout;
      t.tool = answer.tool;
      return t;
    }
    return answer;
  };
  return h;
}

/// Model-checking service backed by the built-in checker.
inline wire::Handlers model_checker() {
  wire::Handlers h;
  h.model_check = [](const wire::McProblem& p, const Deadline& d) {
    try {
      return mc::check(aiger::parse_aag(p.circuit), p.decomp_specification, p.realizable, d);
    } catch (const std::exception& e) {
      mc::McSolution s;
      s.status = mc::McStatus::Invalid;
      s.detail = e.what();
      return s;
    }
  };
  return h;
}

struct NeuralScript {
  std::chrono::milliseconds delay{10};
  /// Circuit text and claimed verdict for a problem.
  std::function<std::pair<std::string, bool>(const wire::SynProblem&)> propose;
  /// Claim "satisfied" no matter what the model checker said.
  bool lie = false;
};

/// Neural solver: proposes a circuit, asks the model-checking service about
/// it and reports both.
inline wire::Handlers neural(NeuralScript script, std::string mc_url) {
  wire::Handlers h;
  auto shared = std::make_shared<NeuralScript>(std::move(script));
  h.synthesize_unsound = [shared, mc_url](const wire::SynProblem& p, const Deadline& d) {
    wire::UnsoundSynSolution u;
    u.tool = "neural-stub";
    u.synthesis_solution.tool = "neural-stub";
    if (!wait_for(shared->delay, d)) {
      u.synthesis_solution.status = SynStatus::Timeout;
      return u;
    }
    auto [circuit, realizable] = shared->propose(p);
    wire::McProblem q;
    q.parameters = p.parameters;
    q.parameters.erase("timeout");
    q.decomp_specification = p.decomp_specification;
    q.circuit = circuit;
    q.realizable = realizable;
    u.model_checking_solution = wire::Client(mc_url).model_check(q, d);
    if (shared->lie) {
      u.model_checking_solution->status = mc::McStatus::Satisfied;
      u.model_checking_solution->counterexample.reset();
    }
    u.synthesis_solution.status = realizable ? SynStatus::Realizable : SynStatus::Unrealizable;
    u.synthesis_solution.realizable = realizable;
    u.synthesis_solution.circuit = circuit;
    return u;
  };
  return h;
}

}  // namespace stubs
