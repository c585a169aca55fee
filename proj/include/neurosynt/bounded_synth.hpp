#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "neurosynt/aiger.hpp"
#include "neurosynt/deadline.hpp"
#include "neurosynt/ltl.hpp"
#include "neurosynt/solution.hpp"

namespace neurosynt::synth {

/// Finite-state strategy. Letters are bitmasks over the machine's input and
/// output ports; entry `state * 2^num_inputs + letter` holds the response.
/// The initial state is 0.
struct MealyMachine {
  std::size_t num_states = 1;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  std::vector<std::uint64_t> output;
  std::vector<std::uint32_t> next;

  /// A total machine with every entry set to (all-false, state 0).
  static MealyMachine blank(std::size_t states, std::size_t inputs, std::size_t outputs);

  std::size_t letters() const { return std::size_t{1} << num_inputs; }
  std::size_t index(std::uint32_t state, std::uint64_t in) const { return state * letters() + in; }
  /// (output letter, next state).
  std::pair<std::uint64_t, std::uint32_t> step(std::uint32_t state, std::uint64_t in) const {
    return {output[index(state, in)], next[index(state, in)]};
  }

  friend bool operator==(const MealyMachine&, const MealyMachine&) = default;
};

/// Circuit with ceil(log2 n) latches holding the binary state code. Ports are
/// named after `inputs`/`outputs`, latches `l0`, `l1`, ...
aiger::Circuit mealy_to_aiger(const MealyMachine& m, const std::vector<std::string>& inputs,
                              const std::vector<std::string>& outputs);

struct StrategySearch {
  std::optional<MealyMachine> machine;
  bool timed_out = false;
};

/// Smallest-first search for a system strategy with at most `max_states`
/// states: the machine reads spec inputs and drives spec outputs, with the
/// spec's timing. Transition tables are filled in the order the partial
/// product first needs them, new states are numbered in that order, and a
/// partial table is dropped as soon as the defined part admits a run of the
/// negated specification.
StrategySearch find_strategy(const ltl::DecompSpec& spec, std::size_t max_states, const Deadline& deadline);

inline constexpr std::size_t kDefaultMaxStates = 4;
inline constexpr const char* kToolName = "bounded-synth";

/// Alternates system levels with environment levels on the dual problem
/// (two system bounds per environment bound). A found machine is converted
/// to a circuit and model checked before it is returned.
SynSolution synthesize(const ltl::DecompSpec& spec, std::size_t max_states, const Deadline& deadline);
SynSolution synthesize(const ltl::DecompSpec& spec, std::size_t max_states, Seconds budget);

}  // namespace neurosynt::synth
