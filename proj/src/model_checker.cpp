#include "neurosynt/model_checker.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "neurosynt/emptiness.hpp"

namespace neurosynt::mc {

std::string_view to_string(McStatus s) {
  switch (s) {
    case McStatus::Satisfied: return "satisfied";
    case McStatus::Violated: return "violated";
    case McStatus::Error: return "error";
    case McStatus::Timeout: return "timeout";
    case McStatus::Invalid: return "invalid";
  }
  return "error";
}

McStatus parse_mc_status(std::string_view s) {
  if (s == "satisfied") return McStatus::Satisfied;
  if (s == "violated") return McStatus::Violated;
  if (s == "error") return McStatus::Error;
  if (s == "timeout") return McStatus::Timeout;
  if (s == "invalid") return McStatus::Invalid;
  throw std::invalid_argument("unknown model-checking status '" + std::string(s) + "'");
}

namespace {

constexpr std::size_t kMaxFreeInputs = 20;

struct LoopKey {
  std::uint64_t latches;
  std::uint64_t observed;
  int state;
  friend bool operator==(const LoopKey&, const LoopKey&) = default;
};

struct LoopKeyHash {
  std::size_t operator()(const LoopKey& k) const {
    std::uint64_t h = k.latches * 0x9E3779B97F4A7C15ULL;
    h ^= k.observed + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.state) + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Synchronous product of a circuit whose inputs are chosen freely and a
// Büchi automaton reading the combined letter.
class CircuitLoop {
 public:
  CircuitLoop(const aiger::Simulator& sim, const BuchiAutomaton& aut, std::vector<int> in_bits,
              std::vector<int> out_bits, bool delayed)
      : sim_(sim), aut_(aut), in_bits_(std::move(in_bits)), out_bits_(std::move(out_bits)), delayed_(delayed) {}

  int initial() { return intern({0, 0, -1}); }

  void expand(int v, std::vector<Successor>& out) {
    const LoopKey k = keys_[v];
    const std::uint64_t choices = std::uint64_t{1} << in_bits_.size();
    for (std::uint64_t x = 0; x < choices; ++x) {
      const std::uint64_t seen = delayed_ ? k.observed : x;
      auto [o, next] = sim_.step_bits(k.latches, seen);
      const std::uint64_t letter = spread(x, in_bits_) | spread(o, out_bits_);
      for (const auto& e : aut_.successors(k.state))
        if (e.guard.matches(letter)) out.push_back({intern({next, delayed_ ? x : 0, e.to}), letter});
    }
  }

  bool accepting(int v) const {
    int q = keys_[v].state;
    return q >= 0 && aut_.accepting[q];
  }

 private:
  static std::uint64_t spread(std::uint64_t bits, const std::vector<int>& where) {
    std::uint64_t letter = 0;
    for (std::size_t k = 0; k < where.size(); ++k)
      if (where[k] >= 0 && ((bits >> k) & 1U)) letter |= std::uint64_t{1} << where[k];
    return letter;
  }

  int intern(const LoopKey& k) {
    auto [it, fresh] = ids_.emplace(k, static_cast<int>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return it->second;
  }

  const aiger::Simulator& sim_;
  const BuchiAutomaton& aut_;
  std::vector<int> in_bits_, out_bits_;
  bool delayed_;
  std::unordered_map<LoopKey, int, LoopKeyHash> ids_;
  std::vector<LoopKey> keys_;
};

std::vector<int> bits_for(const std::vector<std::string>& names, const std::vector<std::string>& alphabet) {
  std::vector<int> out;
  for (const auto& n : names) {
    auto it = std::find(alphabet.begin(), alphabet.end(), n);
    out.push_back(it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin()));
  }
  return out;
}

// Resolves circuit port names against the expected atoms. Returns nullopt
// with `why` set when the interface does not match.
std::optional<std::vector<std::string>> resolve_ports(const aiger::Circuit& c, char kind, std::size_t count,
                                                      const std::vector<std::string>& expected, std::string& why) {
  const char* what = kind == 'i' ? "input" : "output";
  bool any = false;
  for (const auto& s : c.symbols)
    if (s.kind == kind) any = true;
  if (!any) {
    if (count != expected.size()) {
      why = "circuit has " + std::to_string(count) + " " + what + "s but " + std::to_string(expected.size()) +
            " are expected";
      return std::nullopt;
    }
    return expected;
  }
  auto names = kind == 'i' ? c.input_names() : c.output_names();
  if (!names) {
    why = std::string("some circuit ") + what + "s have no symbol";
    return std::nullopt;
  }
  std::set<std::string> have(names->begin(), names->end()), want(expected.begin(), expected.end());
  if (have.size() != names->size() || have != want) {
    why = std::string("circuit ") + what + " names do not match the specification";
    return std::nullopt;
  }
  return names;
}

ltl::LassoTrace to_trace(const ltl::LetterLasso& lasso, const std::vector<std::string>& alphabet) {
  auto decode = [&](std::uint64_t letter) {
    ltl::Assignment a;
    for (std::size_t k = 0; k < alphabet.size(); ++k)
      if ((letter >> k) & 1U) a.insert(alphabet[k]);
    return a;
  };
  ltl::LassoTrace t;
  for (auto l : lasso.prefix) t.prefix.push_back(decode(l));
  for (auto l : lasso.cycle) t.cycle.push_back(decode(l));
  return t;
}

}  // namespace

ClosedLoopResult find_run(const aiger::Circuit& circuit, const BuchiAutomaton& automaton,
                          const std::vector<std::string>& reads, const std::vector<std::string>& drives,
                          bool delayed, const Deadline& deadline) {
  if (reads.size() != circuit.inputs.size() || drives.size() != circuit.outputs.size())
    throw std::invalid_argument("port names do not cover the circuit interface");
  if (reads.size() > kMaxFreeInputs)
    throw std::runtime_error("explicit-state checking supports at most " + std::to_string(kMaxFreeInputs) + " inputs");
  aiger::Simulator sim(circuit);
  if (!sim.packable()) throw std::runtime_error("circuit has more than 64 latches or outputs");
  CircuitLoop loop(sim, automaton, bits_for(reads, automaton.alphabet), bits_for(drives, automaton.alphabet), delayed);
  auto search = find_accepting_lasso(loop, deadline);
  return {std::move(search.lasso), search.timed_out};
}

McSolution check(const aiger::Circuit& circuit, const ltl::DecompSpec& spec, bool realizable,
                 const Deadline& deadline) {
  const auto start = Clock::now();
  McSolution sol;
  auto finish = [&](McStatus s, std::string detail = {}) {
    sol.status = s;
    sol.detail = std::move(detail);
    sol.time = std::chrono::duration_cast<Seconds>(Clock::now() - start);
    return sol;
  };
  try {
    if (deadline.expired()) return finish(McStatus::Timeout, "budget exhausted before checking");
    try {
      spec.validate();
    } catch (const ltl::SpecError& e) {
      return finish(McStatus::Invalid, e.what());
    }
    try {
      aiger::validate(circuit);
    } catch (const aiger::AigerError& e) {
      return finish(McStatus::Invalid, e.what());
    }
    const auto& want_reads = realizable ? spec.inputs : spec.outputs;
    const auto& want_drives = realizable ? spec.outputs : spec.inputs;
    std::string why;
    auto reads = resolve_ports(circuit, 'i', circuit.inputs.size(), want_reads, why);
    if (!reads) return finish(McStatus::Invalid, why);
    auto drives = resolve_ports(circuit, 'o', circuit.outputs.size(), want_drives, why);
    if (!drives) return finish(McStatus::Invalid, why);

    std::vector<std::string> alphabet = spec.inputs;
    alphabet.insert(alphabet.end(), spec.outputs.begin(), spec.outputs.end());
    const ltl::Formula phi = ltl::spec_to_formula(spec);
    // A run accepted here refutes the claim.
    const ltl::Formula refutation = realizable ? ltl::Not(phi) : phi;
    const bool delayed = realizable ? spec.semantics == ltl::Semantics::Moore : spec.semantics == ltl::Semantics::Mealy;
    BuchiAutomaton aut;
    try {
      aut = ltl_to_buchi(refutation, alphabet, deadline);
    } catch (const TranslationTimeout& e) {
      return finish(McStatus::Timeout, e.what());
    }
    auto r = find_run(circuit, aut, *reads, *drives, delayed, deadline);
    if (r.timed_out) return finish(McStatus::Timeout, "budget exhausted during search");
    if (r.run) {
      sol.counterexample = to_trace(*r.run, alphabet);
      return finish(McStatus::Violated);
    }
    return finish(McStatus::Satisfied);
  } catch (const std::exception& e) {
    sol.counterexample.reset();
    return finish(McStatus::Error, e.what());
  }
}

McSolution check(const aiger::Circuit& circuit, const ltl::DecompSpec& spec, bool realizable, Seconds budget) {
  return check(circuit, spec, realizable, Deadline::after(budget));
}

bool check_trace(const ltl::DecompSpec& spec, const ltl::LassoTrace& trace) {
  return ltl::eval_lasso(ltl::spec_to_formula(spec), trace);
}

ltl::DecompSpec dual_spec(const ltl::DecompSpec& spec) {
  ltl::DecompSpec d;
  d.inputs = spec.outputs;
  d.outputs = spec.inputs;
  d.guarantees = {ltl::Not(ltl::spec_to_formula(spec))};
  d.semantics = spec.semantics == ltl::Semantics::Mealy ? ltl::Semantics::Moore : ltl::Semantics::Mealy;
  return d;
}

}  // namespace neurosynt::mc
