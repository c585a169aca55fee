#include "neurosynt/bounded_synth.hpp"

#include <map>
#include <unordered_map>

#include "neurosynt/buchi.hpp"
#include "neurosynt/emptiness.hpp"
#include "neurosynt/model_checker.hpp"

namespace neurosynt {

std::string_view to_string(SynStatus s) {
  switch (s) {
    case SynStatus::Realizable: return "realizable";
    case SynStatus::Unrealizable: return "unrealizable";
    case SynStatus::Error: return "error";
    case SynStatus::Timeout: return "timeout";
    case SynStatus::Nonsuccess: return "nonsuccess";
  }
  return "error";
}

SynStatus parse_syn_status(std::string_view s) {
  if (s == "realizable") return SynStatus::Realizable;
  if (s == "unrealizable") return SynStatus::Unrealizable;
  if (s == "error") return SynStatus::Error;
  if (s == "timeout") return SynStatus::Timeout;
  if (s == "nonsuccess") return SynStatus::Nonsuccess;
  throw std::invalid_argument("unknown synthesis status '" + std::string(s) + "'");
}

}  // namespace neurosynt

namespace neurosynt::synth {

MealyMachine MealyMachine::blank(std::size_t states, std::size_t inputs, std::size_t outputs) {
  MealyMachine m;
  m.num_states = states;
  m.num_inputs = inputs;
  m.num_outputs = outputs;
  m.output.assign(states << inputs, 0);
  m.next.assign(states << inputs, 0);
  return m;
}

// ---------------------------------------------------------------------------
// Circuit construction.

namespace {

using aiger::Literal;

class AigBuilder {
 public:
  explicit AigBuilder(std::uint32_t first_free_var) : next_var_(first_free_var) {}

  Literal conj(Literal a, Literal b) {
    if (a > b) std::swap(a, b);
    if (a == 0) return 0;
    if (a == 1) return b;
    if (a == b) return a;
    if (a == aiger::negate(b)) return 0;
    auto [it, fresh] = cache_.try_emplace({a, b}, 0);
    if (fresh) {
      it->second = 2 * next_var_++;
      ands_.push_back({it->second, b, a});
    }
    return it->second;
  }
  Literal disj(Literal a, Literal b) { return aiger::negate(conj(aiger::negate(a), aiger::negate(b))); }
  Literal ite(Literal s, Literal t, Literal e) {
    if (t == e) return t;
    if (t == 1 && e == 0) return s;
    if (t == 0 && e == 1) return aiger::negate(s);
    if (t == 1) return disj(s, e);
    if (t == 0) return conj(aiger::negate(s), e);
    if (e == 0) return conj(s, t);
    if (e == 1) return disj(aiger::negate(s), t);
    return disj(conj(s, t), conj(aiger::negate(s), e));
  }

  /// Shannon decomposition of a truth table; bit j of the row index is `vars[j]`.
  Literal function(const std::vector<bool>& table, const std::vector<Literal>& vars) {
    return build(table, 0, table.size(), vars, vars.size());
  }

  std::uint32_t max_var() const { return next_var_ - 1; }
  std::vector<aiger::AndGate> take_ands() { return std::move(ands_); }

 private:
  Literal build(const std::vector<bool>& table, std::size_t lo, std::size_t len, const std::vector<Literal>& vars,
                std::size_t nvars) {
    if (nvars == 0) return table[lo] ? 1 : 0;
    std::vector<bool> key(table.begin() + static_cast<long>(lo), table.begin() + static_cast<long>(lo + len));
    auto& memo = memo_[nvars];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t half = len / 2;
    Literal low = build(table, lo, half, vars, nvars - 1);
    Literal high = build(table, lo + half, half, vars, nvars - 1);
    Literal r = ite(vars[nvars - 1], high, low);
    memo.emplace(std::move(key), r);
    return r;
  }

  std::uint32_t next_var_;
  std::vector<aiger::AndGate> ands_;
  std::map<std::pair<Literal, Literal>, Literal> cache_;
  std::map<std::size_t, std::map<std::vector<bool>, Literal>> memo_;
};

std::size_t state_bits(std::size_t n) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < n) ++b;
  return b;
}

}  // namespace

aiger::Circuit mealy_to_aiger(const MealyMachine& m, const std::vector<std::string>& inputs,
                              const std::vector<std::string>& outputs) {
  if (inputs.size() != m.num_inputs || outputs.size() != m.num_outputs)
    throw std::invalid_argument("port names do not match the machine");
  const std::size_t ni = m.num_inputs, nb = state_bits(m.num_states);
  aiger::Circuit c;
  std::vector<Literal> vars;
  for (std::size_t k = 0; k < ni; ++k) {
    c.inputs.push_back(static_cast<Literal>(2 * (k + 1)));
    vars.push_back(c.inputs.back());
  }
  for (std::size_t k = 0; k < nb; ++k) vars.push_back(static_cast<Literal>(2 * (ni + k + 1)));

  AigBuilder b(static_cast<std::uint32_t>(ni + nb + 1));
  const std::size_t rows = std::size_t{1} << (ni + nb);
  auto table_of = [&](auto bit_of) {
    std::vector<bool> t(rows, false);
    for (std::size_t row = 0; row < rows; ++row) {
      std::size_t code = row >> ni;
      if (code < m.num_states) t[row] = bit_of(m.index(static_cast<std::uint32_t>(code), row & (m.letters() - 1)));
    }
    return t;
  };
  for (std::size_t j = 0; j < m.num_outputs; ++j)
    c.outputs.push_back(b.function(table_of([&](std::size_t e) { return (m.output[e] >> j) & 1U; }), vars));
  for (std::size_t j = 0; j < nb; ++j) {
    Literal next = b.function(table_of([&](std::size_t e) { return (m.next[e] >> j) & 1U; }), vars);
    c.latches.push_back({vars[ni + j], next});
  }
  c.ands = b.take_ands();
  c.max_var = b.max_var();
  for (std::size_t k = 0; k < ni; ++k) c.symbols.push_back({'i', k, inputs[k]});
  for (std::size_t k = 0; k < nb; ++k) c.symbols.push_back({'l', k, "l" + std::to_string(k)});
  for (std::size_t k = 0; k < m.num_outputs; ++k) c.symbols.push_back({'o', k, outputs[k]});
  return c;
}

// ---------------------------------------------------------------------------
// Strategy search.

namespace {

constexpr std::size_t kMaxPortBits = 12;
constexpr std::uint32_t kUndefined = ~std::uint32_t{0};

struct Key {
  std::uint32_t q;
  std::uint64_t obs;
  int s;
  friend bool operator==(const Key&, const Key&) = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = (static_cast<std::uint64_t>(k.q) << 40) ^ (k.obs * 0x9E3779B97F4A7C15ULL);
    return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(k.s + 1) * 0xC2B2AE3D27D4EB4FULL));
  }
};

// Product of a partially defined machine, a free opponent, and the automaton
// of the negated specification. Undefined entries have no successors; the
// first one met is remembered as the next decision.
class PartialProduct {
 public:
  PartialProduct(const MealyMachine& m, const mc::BuchiAutomaton& aut, std::size_t opp_bits, bool delayed)
      : m_(m), aut_(aut), opp_bits_(opp_bits), delayed_(delayed) {}

  int initial() { return intern({0, 0, -1}); }

  void expand(int v, std::vector<mc::Successor>& out) {
    const Key k = keys_[v];
    const std::uint64_t choices = std::uint64_t{1} << opp_bits_;
    for (std::uint64_t x = 0; x < choices; ++x) {
      const std::uint64_t in = delayed_ ? k.obs : x;
      const std::size_t e = m_.index(k.q, in);
      if (m_.next[e] == kUndefined) {
        if (!undefined_) undefined_ = e;
        continue;
      }
      const std::uint64_t letter = x | (m_.output[e] << opp_bits_);
      for (const auto& edge : aut_.successors(k.s))
        if (edge.guard.matches(letter)) out.push_back({intern({m_.next[e], delayed_ ? x : 0, edge.to}), letter});
    }
  }

  bool accepting(int v) const { return keys_[v].s >= 0 && aut_.accepting[keys_[v].s]; }

  std::optional<std::size_t> undefined() const { return undefined_; }

 private:
  int intern(const Key& k) {
    auto [it, fresh] = ids_.try_emplace(k, static_cast<int>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return it->second;
  }

  const MealyMachine& m_;
  const mc::BuchiAutomaton& aut_;
  std::size_t opp_bits_;
  bool delayed_;
  std::vector<Key> keys_;
  std::unordered_map<Key, int, KeyHash> ids_;
  std::optional<std::size_t> undefined_;
};

class Search {
 public:
  Search(const mc::BuchiAutomaton& aut, std::size_t in_bits, std::size_t out_bits, std::size_t max_states,
         bool delayed, const Deadline& deadline)
      : aut_(aut), max_states_(max_states), delayed_(delayed), deadline_(deadline) {
    m_ = MealyMachine::blank(max_states, in_bits, out_bits);
    std::fill(m_.next.begin(), m_.next.end(), kUndefined);
  }

  StrategySearch run() {
    StrategySearch r;
    if (solve(1)) {
      r.machine = finish();
    }
    r.timed_out = timed_out_;
    return r;
  }

 private:
  bool solve(std::uint32_t used) {
    if (deadline_.expired()) {
      timed_out_ = true;
      return false;
    }
    PartialProduct g(m_, aut_, m_.num_inputs, delayed_);
    auto res = mc::find_accepting_lasso(g, deadline_);
    if (res.timed_out) {
      timed_out_ = true;
      return false;
    }
    if (res.lasso) return false;
    auto e = g.undefined();
    if (!e) {
      used_ = used;
      return true;
    }
    const std::uint64_t outs = std::uint64_t{1} << m_.num_outputs;
    const std::uint32_t limit = std::min<std::uint32_t>(used + 1, static_cast<std::uint32_t>(max_states_));
    for (std::uint64_t y = 0; y < outs; ++y) {
      for (std::uint32_t q = 0; q < limit; ++q) {
        m_.output[*e] = y;
        m_.next[*e] = q;
        if (solve(std::max(used, q + 1))) return true;
        if (timed_out_) return false;
      }
    }
    m_.output[*e] = 0;
    m_.next[*e] = kUndefined;
    return false;
  }

  MealyMachine finish() const {
    MealyMachine out = MealyMachine::blank(used_, m_.num_inputs, m_.num_outputs);
    for (std::size_t e = 0; e < out.output.size(); ++e) {
      if (m_.next[e] == kUndefined) continue;
      out.output[e] = m_.output[e];
      out.next[e] = m_.next[e];
    }
    return out;
  }

  const mc::BuchiAutomaton& aut_;
  std::size_t max_states_;
  bool delayed_;
  const Deadline& deadline_;
  MealyMachine m_;
  std::uint32_t used_ = 1;
  bool timed_out_ = false;
};

}  // namespace

StrategySearch find_strategy(const ltl::DecompSpec& spec, std::size_t max_states, const Deadline& deadline) {
  spec.validate();
  if (max_states < 1) throw std::invalid_argument("max_states must be at least 1");
  if (spec.inputs.size() > kMaxPortBits || spec.outputs.size() > kMaxPortBits)
    throw std::invalid_argument("too many ports for explicit enumeration");
  if (deadline.expired()) return {std::nullopt, true};
  std::vector<std::string> alphabet = spec.inputs;
  alphabet.insert(alphabet.end(), spec.outputs.begin(), spec.outputs.end());
  mc::BuchiAutomaton aut;
  try {
    aut = mc::ltl_to_buchi(ltl::Not(ltl::spec_to_formula(spec)), alphabet, deadline);
  } catch (const mc::TranslationTimeout&) {
    return {std::nullopt, true};
  }
  const bool delayed = spec.semantics == ltl::Semantics::Moore;
  return Search(aut, spec.inputs.size(), spec.outputs.size(), max_states, delayed, deadline).run();
}

SynSolution synthesize(const ltl::DecompSpec& spec, std::size_t max_states, const Deadline& deadline) {
  const auto start = Clock::now();
  SynSolution sol;
  sol.tool = kToolName;
  auto finish = [&](SynStatus status, std::string detail) {
    sol.status = status;
    sol.detailed_status = std::move(detail);
    sol.time = std::chrono::duration_cast<Seconds>(Clock::now() - start);
    return sol;
  };

  try {
    spec.validate();
    if (max_states < 1) return finish(SynStatus::Error, "max_states must be at least 1");
    if (spec.inputs.size() > kMaxPortBits || spec.outputs.size() > kMaxPortBits)
      return finish(SynStatus::Nonsuccess, "too many ports for explicit enumeration");

    const ltl::DecompSpec dual = mc::dual_spec(spec);
    std::size_t sys = 0, env = 0;
    while (sys < max_states || env < max_states) {
      for (int k = 0; k < 2 && sys < max_states; ++k) {
        ++sys;
        auto r = find_strategy(spec, sys, deadline);
        if (r.timed_out) return finish(SynStatus::Timeout, "budget exhausted at system bound " + std::to_string(sys));
        if (!r.machine) continue;
        auto circuit = mealy_to_aiger(*r.machine, spec.inputs, spec.outputs);
        auto mc = mc::check(circuit, spec, true, deadline);
        if (mc.status == mc::McStatus::Timeout) return finish(SynStatus::Timeout, "budget exhausted while verifying");
        if (mc.status != mc::McStatus::Satisfied)
          return finish(SynStatus::Error, "internal: synthesized system failed verification (" +
                                              std::string(mc::to_string(mc.status)) + ")");
        sol.circuit = aiger::serialize_aag(circuit);
        sol.realizable = true;
        return finish(SynStatus::Realizable, "system strategy with " + std::to_string(r.machine->num_states) +
                                                 " state(s)");
      }
      if (env < max_states) {
        ++env;
        auto r = find_strategy(dual, env, deadline);
        if (r.timed_out) return finish(SynStatus::Timeout, "budget exhausted at environment bound " + std::to_string(env));
        if (!r.machine) continue;
        auto circuit = mealy_to_aiger(*r.machine, dual.inputs, dual.outputs);
        auto mc = mc::check(circuit, spec, false, deadline);
        if (mc.status == mc::McStatus::Timeout) return finish(SynStatus::Timeout, "budget exhausted while verifying");
        if (mc.status != mc::McStatus::Satisfied)
          return finish(SynStatus::Error, "internal: synthesized environment failed verification (" +
                                              std::string(mc::to_string(mc.status)) + ")");
        sol.circuit = aiger::serialize_aag(circuit);
        sol.realizable = false;
        return finish(SynStatus::Unrealizable, "environment strategy with " +
                                                   std::to_string(r.machine->num_states) + " state(s)");
      }
    }
    return finish(SynStatus::Nonsuccess, "no strategy with at most " + std::to_string(max_states) + " state(s)");
  } catch (const std::exception& e) {
    return finish(SynStatus::Error, e.what());
  }
}

SynSolution synthesize(const ltl::DecompSpec& spec, std::size_t max_states, Seconds budget) {
  return synthesize(spec, max_states, Deadline::after(budget));
}

}  // namespace neurosynt::synth
