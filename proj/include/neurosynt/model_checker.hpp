#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "neurosynt/aiger.hpp"
#include "neurosynt/buchi.hpp"
#include "neurosynt/deadline.hpp"
#include "neurosynt/ltl.hpp"

namespace neurosynt::mc {

enum class McStatus { Satisfied, Violated, Error, Timeout, Invalid };

std::string_view to_string(McStatus s);
McStatus parse_mc_status(std::string_view s);

struct McSolution {
  McStatus status = McStatus::Error;
  /// Present iff status is Violated. Letters range over spec inputs and outputs.
  std::optional<ltl::LassoTrace> counterexample;
  Seconds time{0};
  std::string detail;

  friend bool operator==(const McSolution&, const McSolution&) = default;
};

/// Model checks a circuit against an assume-guarantee specification.
///
/// With `realizable == true` the circuit is a system implementation: it
/// reads the spec inputs and drives the spec outputs, and every run must
/// satisfy spec_to_formula(spec). With `realizable == false` it is an
/// environment counter-strategy: it reads the spec outputs, drives the spec
/// inputs, and every run must violate the formula.
///
/// The player that moves second in a step sees the other's current letter.
/// For mealy specs that is the system, so an environment circuit observes
/// system outputs one step late (initially all false). For moore specs the
/// roles flip and a system circuit observes inputs one step late.
///
/// Circuit ports are matched to atoms by symbol name; when a port section has
/// no symbols at all, ports are matched positionally.
McSolution check(const aiger::Circuit& circuit, const ltl::DecompSpec& spec, bool realizable,
                 const Deadline& deadline);
McSolution check(const aiger::Circuit& circuit, const ltl::DecompSpec& spec, bool realizable, Seconds budget);

/// eval_lasso of the spec formula on the trace.
bool check_trace(const ltl::DecompSpec& spec, const ltl::LassoTrace& trace);

/// The dual problem an environment circuit solves: inputs and outputs
/// swapped, the single guarantee `!(spec formula)`, and flipped semantics.
ltl::DecompSpec dual_spec(const ltl::DecompSpec& spec);

/// Lower-level entry point shared by both claims: searches the closed loop of
/// `circuit` with free inputs for a run accepted by `automaton`.
/// `reads`/`drives` name the automaton atoms the circuit's inputs/outputs
/// are wired to, in port order. `delayed` makes the circuit see its inputs one
/// step late.
struct ClosedLoopResult {
  std::optional<ltl::LetterLasso> run;
  bool timed_out = false;
};
ClosedLoopResult find_run(const aiger::Circuit& circuit, const BuchiAutomaton& automaton,
                          const std::vector<std::string>& reads, const std::vector<std::string>& drives,
                          bool delayed, const Deadline& deadline);

}  // namespace neurosynt::mc
