#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace neurosynt::aiger {

/// Literal 0 is false, 1 is true, 2k is variable k and 2k+1 its negation.
using Literal = std::uint32_t;

constexpr Literal var_of(Literal lit) { return lit >> 1; }
constexpr bool is_negated(Literal lit) { return lit & 1U; }
constexpr Literal negate(Literal lit) { return lit ^ 1U; }

struct Latch {
  Literal lit;
  Literal next;
  friend bool operator==(const Latch&, const Latch&) = default;
};

struct AndGate {
  Literal lhs;
  Literal rhs0;
  Literal rhs1;
  friend bool operator==(const AndGate&, const AndGate&) = default;
};

/// Symbol table entry, e.g. `i0 r_0`. `kind` is one of 'i', 'l', 'o'.
struct Symbol {
  char kind;
  std::size_t index;
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// An and-inverter graph as written in the ASCII `aag` format. Symbols and
/// comments keep their file order so serialization is byte-exact.
struct Circuit {
  std::uint32_t max_var = 0;
  std::vector<Literal> inputs;
  std::vector<Latch> latches;
  std::vector<Literal> outputs;
  std::vector<AndGate> ands;
  std::vector<Symbol> symbols;
  std::vector<std::string> comments;

  std::optional<std::string> symbol(char kind, std::size_t index) const;
  /// Names of inputs (or outputs) in declaration order; nullopt unless every one has a symbol.
  std::optional<std::vector<std::string>> input_names() const;
  std::optional<std::vector<std::string>> output_names() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

class AigerError : public std::runtime_error {
 public:
  enum class Kind {
    Malformed,
    HeaderMismatch,
    OddDefinitionLiteral,
    DuplicateVariable,
    VariableOutOfRange,
    UndefinedLiteral,
    CyclicDefinition,
    UnsupportedReset,
  };
  AigerError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

Circuit parse_aag(std::string_view text);
std::string serialize_aag(const Circuit& c);

/// Checks the structural invariants parse_aag enforces; throws AigerError.
void validate(const Circuit& c);

struct Stats {
  std::size_t num_latches = 0;
  std::size_t num_ands = 0;
  std::uint32_t max_var = 0;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  friend bool operator==(const Stats&, const Stats&) = default;
};

Stats stats(const Circuit& c);

/// Latch values in declaration order; the initial state is all zero.
using CircuitState = std::vector<bool>;

struct StepResult {
  std::vector<bool> outputs;
  CircuitState next;
};

/// Evaluates a validated circuit one clock step at a time. AND gates are
/// ordered topologically once at construction.
class Simulator {
 public:
  explicit Simulator(const Circuit& c);

  const Circuit& circuit() const { return circuit_; }
  CircuitState initial_state() const { return CircuitState(circuit_.latches.size(), false); }

  StepResult step(const CircuitState& state, const std::vector<bool>& inputs) const;

  /// Packed variant for circuits with at most 64 latches, inputs and outputs:
  /// bit k of `latches`/`inputs` is latch/input k. Returns (outputs, next latches).
  std::pair<std::uint64_t, std::uint64_t> step_bits(std::uint64_t latches, std::uint64_t inputs) const;
  bool packable() const;

 private:
  Circuit circuit_;
  std::vector<std::size_t> order_;  // indices into circuit_.ands
};

StepResult step(const Circuit& c, const CircuitState& state, const std::vector<bool>& inputs);

}  // namespace neurosynt::aiger
