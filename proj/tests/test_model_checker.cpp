#include <doctest.h>

#include <map>
#include <random>

#include "neurosynt/buchi.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/spec_io.hpp"
#include "support/oracles.hpp"

using namespace neurosynt;
using ltl::parse;

namespace {

ltl::DecompSpec make_spec(std::vector<std::string> in, std::vector<std::string> out, std::vector<std::string> g,
                          ltl::Semantics sem = ltl::Semantics::Mealy) {
  ltl::DecompSpec s;
  s.inputs = std::move(in);
  s.outputs = std::move(out);
  for (const auto& t : g) s.guarantees.push_back(parse(t));
  s.semantics = sem;
  return s;
}

// Bitmask letter over inputs ++ outputs for a named assignment.
std::uint64_t to_letter(const ltl::Assignment& a, const std::vector<std::string>& order) {
  std::uint64_t l = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (a.count(order[k])) l |= std::uint64_t{1} << k;
  return l;
}

// Runs a system circuit (mealy timing) on the input lasso until the pair
// (latch state, cycle position) repeats, giving an exact lasso over inputs ++ outputs.
ltl::LetterLasso closed_trace(const aiger::Circuit& c, const ltl::LetterLasso& in, std::size_t num_in) {
  aiger::Simulator sim(c);
  auto state = sim.initial_state();
  auto run_step = [&](std::uint64_t letter) {
    std::vector<bool> bits(c.inputs.size());
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = (letter >> k) & 1U;
    auto r = sim.step(state, bits);
    std::uint64_t full = letter;
    for (std::size_t k = 0; k < r.outputs.size(); ++k)
      if (r.outputs[k]) full |= std::uint64_t{1} << (num_in + k);
    state = r.next;
    return full;
  };
  ltl::LetterLasso out;
  for (auto l : in.prefix) out.prefix.push_back(run_step(l));
  std::map<std::pair<aiger::CircuitState, std::size_t>, std::size_t> seen;
  std::vector<std::uint64_t> tail;
  for (std::size_t i = 0;; ++i) {
    std::size_t pos = i % in.cycle.size();
    auto key = std::make_pair(state, pos);
    if (auto it = seen.find(key); it != seen.end()) {
      out.prefix.insert(out.prefix.end(), tail.begin(), tail.begin() + static_cast<long>(it->second));
      out.cycle.assign(tail.begin() + static_cast<long>(it->second), tail.end());
      return out;
    }
    seen[key] = tail.size();
    tail.push_back(run_step(in.cycle[pos]));
  }
}

}  // namespace

TEST_SUITE("buchi") {
  TEST_CASE("state counts of basic patterns") {
    CHECK(mc::ltl_to_buchi(parse("G a")).num_states() == 1);
    CHECK(mc::ltl_to_buchi(parse("F a")).num_states() == 2);
    CHECK(mc::ltl_to_buchi(parse("false")).num_states() == 0);
  }

  TEST_CASE("acceptance matches unrolled oracle") {
    const std::vector<std::string> names = {"a", "b"};
    std::vector<ltl::Formula> leaves = {ltl::True(), ltl::False(), ltl::Atom("a"), ltl::Atom("b")};
    using ltl::Op;
    std::vector<Op> ops = {Op::Not, Op::Next, Op::Eventually, Op::Globally, Op::And,
                           Op::Or,  Op::Implies, Op::Equiv,   Op::Until,    Op::Release};
    auto by_size = oracle::enumerate_formulas(4, leaves, ops);
    auto lassos = oracle::all_lassos(2, 2, 2);
    std::size_t mismatches = 0;
    for (const auto& bucket : by_size)
      for (const auto& f : bucket) {
        auto a = mc::ltl_to_buchi(f, names);
        for (const auto& w : lassos)
          if (a.accepts(w) != oracle::unrolled_eval(f, w, names)) ++mismatches;
      }
    CHECK(mismatches == 0);

    std::mt19937_64 rng(99);
    for (int k = 0; k < 300; ++k) {
      auto f = oracle::random_formula(rng, 6, names);
      auto a = mc::ltl_to_buchi(f, names);
      for (int j = 0; j < 30; ++j) {
        auto w = oracle::random_lasso(rng, 2, 4, 4);
        CHECK(a.accepts(w) == oracle::unrolled_eval(f, w, names));
      }
    }
  }
}

TEST_SUITE("model_checker") {
  TEST_CASE("appendix arbiter satisfies its spec") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json");
    auto circuit = aiger::parse_aag("aag 3 2 1 2 0\n2\n4\n6 7\n7\n6\ni0 r_0\ni1 r_1\nl0 l0\no0 g_0\no1 g_1\n");
    auto r = mc::check(circuit, spec, true, Seconds(10));
    CHECK(r.status == mc::McStatus::Satisfied);
    CHECK_FALSE(r.counterexample);
  }

  TEST_CASE("constant false grant is violated with a valid counterexample") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json");
    auto circuit = aiger::parse_aag("aag 2 2 0 2 0\n2\n4\n0\n0\ni0 r_0\ni1 r_1\no0 g_0\no1 g_1\n");
    auto r = mc::check(circuit, spec, true, Seconds(10));
    REQUIRE(r.status == mc::McStatus::Violated);
    REQUIRE(r.counterexample);
    CHECK_FALSE(mc::check_trace(spec, *r.counterexample));
  }

  TEST_CASE("port mismatch and bad circuits are invalid") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json");
    auto circuit = aiger::parse_aag("aag 1 1 0 1 0\n2\n2\ni0 r_0\no0 g_0\n");
    CHECK(mc::check(circuit, spec, true, Seconds(10)).status == mc::McStatus::Invalid);
  }

  TEST_CASE("zero budget times out") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json");
    auto circuit = aiger::parse_aag("aag 3 2 1 2 0\n2\n4\n6 7\n7\n6\ni0 r_0\ni1 r_1\nl0 l0\no0 g_0\no1 g_1\n");
    CHECK(mc::check(circuit, spec, true, Seconds(0)).status == mc::McStatus::Timeout);
  }

  TEST_CASE("environment counter-strategy for the one-step lookahead spec") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/unrealizable.json");
    auto good = aiger::parse_aag("aag 1 1 0 1 0\n2\n3\ni0 o_0\no0 i_0\n");
    auto bad = aiger::parse_aag("aag 1 1 0 1 0\n2\n2\ni0 o_0\no0 i_0\n");
    CHECK(mc::check(good, spec, false, Seconds(10)).status == mc::McStatus::Satisfied);
    auto r = mc::check(bad, spec, false, Seconds(10));
    REQUIRE(r.status == mc::McStatus::Violated);
    REQUIRE(r.counterexample);
    CHECK(mc::check_trace(spec, *r.counterexample));
  }

  TEST_CASE("moore timing delays the system's view of inputs") {
    auto copy = aiger::parse_aag("aag 1 1 0 1 0\n2\n2\ni0 i\no0 o\n");
    auto later = make_spec({"i"}, {"o"}, {"G (i <-> X o)"}, ltl::Semantics::Moore);
    CHECK(mc::check(copy, later, true, Seconds(10)).status == mc::McStatus::Satisfied);
    later.semantics = ltl::Semantics::Mealy;
    CHECK(mc::check(copy, later, true, Seconds(10)).status == mc::McStatus::Violated);
    auto same = make_spec({"i"}, {"o"}, {"G (i <-> o)"});
    CHECK(mc::check(copy, same, true, Seconds(10)).status == mc::McStatus::Satisfied);
    same.semantics = ltl::Semantics::Moore;
    CHECK(mc::check(copy, same, true, Seconds(10)).status == mc::McStatus::Violated);
  }

  TEST_CASE("positional port fallback without symbols") {
    auto spec = make_spec({"i"}, {"o"}, {"G (i <-> o)"});
    CHECK(mc::check(aiger::parse_aag("aag 1 1 0 1 0\n2\n2\n"), spec, true, Seconds(10)).status ==
          mc::McStatus::Satisfied);
  }

  TEST_CASE("agrees with brute-force lasso enumeration") {
    std::mt19937_64 rng(2024);
    const std::vector<std::string> in = {"a", "b"}, out = {"x", "y"};
    const std::vector<std::string> order = {"a", "b", "x", "y"};
    const std::vector<std::string> guarantees = {"G (a -> F x)", "G (x -> X !x)", "G F y", "a U x",
                                                 "G (x <-> X a)", "F G (y | b)", "G (a -> x) & G (b -> y)",
                                                 "(G F a) -> (G F x)"};
    std::vector<ltl::LetterLasso> input_lassos;
    for (int p = 0; p <= 5; ++p)
      for (int c = 1; p + c <= 6; ++c)
        for (auto& w : oracle::all_lassos(2, p, c))
          if (static_cast<int>(w.prefix.size()) == p && static_cast<int>(w.cycle.size()) == c)
            input_lassos.push_back(w);
    int violated = 0, satisfied = 0;
    for (int k = 0; k < 120; ++k) {
      aiger::Circuit c;
      do {
        c = oracle::random_circuit(rng, 2, 2, 6, 2, false);
      } while (c.inputs.size() != 2 || c.outputs.size() != 2);
      c.symbols = {{'i', 0, "a"}, {'i', 1, "b"}, {'o', 0, "x"}, {'o', 1, "y"}};
      auto spec = make_spec(in, out, {guarantees[k % guarantees.size()]});
      auto phi = ltl::spec_to_formula(spec);

      bool brute_violation = false;
      for (const auto& w : input_lassos)
        if (!oracle::unrolled_eval(phi, closed_trace(c, w, 2), order)) {
          brute_violation = true;
          break;
        }
      auto r = mc::check(c, spec, true, Seconds(10));
      if (r.status == mc::McStatus::Violated) {
        ++violated;
        REQUIRE(r.counterexample);
        // Replay the counterexample's inputs through the circuit and confirm it is a real, violating run.
        ltl::LetterLasso inputs;
        for (const auto& a : r.counterexample->prefix) inputs.prefix.push_back(to_letter(a, order) & 3U);
        for (const auto& a : r.counterexample->cycle) inputs.cycle.push_back(to_letter(a, order) & 3U);
        auto replay = closed_trace(c, inputs, 2);
        CHECK_FALSE(oracle::unrolled_eval(phi, replay, order));
        ltl::LetterLasso claimed;
        for (const auto& a : r.counterexample->prefix) claimed.prefix.push_back(to_letter(a, order));
        for (const auto& a : r.counterexample->cycle) claimed.cycle.push_back(to_letter(a, order));
        CHECK_FALSE(oracle::unrolled_eval(phi, claimed, order));
      } else {
        REQUIRE(r.status == mc::McStatus::Satisfied);
        ++satisfied;
        CHECK_FALSE(brute_violation);
      }
      if (brute_violation) CHECK(r.status == mc::McStatus::Violated);
    }
    CHECK(violated > 0);
    CHECK(satisfied > 0);
  }

  TEST_CASE("environment check equals system check of the dual spec") {
    std::mt19937_64 rng(77);
    const std::vector<std::string> guarantees = {"G (o -> X i)", "G F o -> G F i", "G (i <-> o)", "F o",
                                                 "G (o <-> X i)", "i U o"};
    for (int k = 0; k < 80; ++k) {
      aiger::Circuit c;
      do {
        c = oracle::random_circuit(rng, 1, 2, 5, 1, false);
      } while (c.inputs.size() != 1 || c.outputs.size() != 1);
      c.symbols = {{'i', 0, "o"}, {'o', 0, "i"}};
      for (auto sem : {ltl::Semantics::Mealy, ltl::Semantics::Moore}) {
        auto spec = make_spec({"i"}, {"o"}, {guarantees[k % guarantees.size()]}, sem);
        auto env = mc::check(c, spec, false, Seconds(10));
        auto dual = mc::check(c, mc::dual_spec(spec), true, Seconds(10));
        CHECK(env.status == dual.status);
      }
    }
  }
}
