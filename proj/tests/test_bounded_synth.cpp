#include <doctest.h>

#include <random>

#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/spec_io.hpp"

using namespace neurosynt;
using synth::MealyMachine;

namespace {

ltl::DecompSpec make_spec(std::vector<std::string> in, std::vector<std::string> out, std::vector<std::string> g,
                          ltl::Semantics sem = ltl::Semantics::Mealy) {
  ltl::DecompSpec s;
  s.inputs = std::move(in);
  s.outputs = std::move(out);
  for (const auto& t : g) s.guarantees.push_back(ltl::parse(t));
  s.semantics = sem;
  return s;
}

std::size_t states_in(const std::string& detail) {
  auto pos = detail.find("with ");
  return std::stoul(detail.substr(pos + 5));
}

// Steps the machine and the circuit side by side on random inputs.
void co_simulate(const MealyMachine& m, std::mt19937_64& rng, int steps) {
  std::vector<std::string> in, out;
  for (std::size_t k = 0; k < m.num_inputs; ++k) in.push_back("i" + std::to_string(k));
  for (std::size_t k = 0; k < m.num_outputs; ++k) out.push_back("o" + std::to_string(k));
  auto c = synth::mealy_to_aiger(m, in, out);
  REQUIRE_NOTHROW(aiger::validate(c));
  aiger::Simulator sim(c);
  auto latches = sim.initial_state();
  std::uint32_t q = 0;
  std::uniform_int_distribution<std::uint64_t> letter(0, m.letters() - 1);
  for (int t = 0; t < steps; ++t) {
    std::uint64_t x = letter(rng);
    std::vector<bool> bits(m.num_inputs);
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = (x >> k) & 1U;
    auto r = sim.step(latches, bits);
    auto [y, q_next] = m.step(q, x);
    for (std::size_t k = 0; k < m.num_outputs; ++k) CHECK(r.outputs[k] == static_cast<bool>((y >> k) & 1U));
    latches = r.next;
    q = q_next;
  }
}

}  // namespace

TEST_SUITE("bounded_synth") {
  TEST_CASE("mealy_to_aiger fixtures") {
    auto always = MealyMachine::blank(1, 0, 1);
    always.output = {1};
    auto c = synth::mealy_to_aiger(always, {}, {"g_0"});
    CHECK(c.latches.empty());
    CHECK(c.outputs == std::vector<aiger::Literal>{1});

    auto alt = MealyMachine::blank(2, 1, 1);
    for (std::uint64_t x = 0; x < 2; ++x) {
      alt.output[alt.index(0, x)] = 1;
      alt.next[alt.index(0, x)] = 1;
      alt.next[alt.index(1, x)] = 0;
    }
    auto ca = synth::mealy_to_aiger(alt, {"r"}, {"g"});
    REQUIRE(ca.latches.size() == 1);
    CHECK(ca.latches[0].next == aiger::negate(ca.latches[0].lit));
    CHECK(ca.ands.empty());
    std::mt19937_64 rng(5);
    co_simulate(alt, rng, 4);
  }

  TEST_CASE("mealy_to_aiger co-simulates random machines") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
      std::uniform_int_distribution<std::size_t> ns(1, 4), nb(0, 2);
      auto m = MealyMachine::blank(ns(rng), nb(rng), nb(rng));
      std::uniform_int_distribution<std::uint64_t> out(0, (std::uint64_t{1} << m.num_outputs) - 1);
      std::uniform_int_distribution<std::uint32_t> st(0, static_cast<std::uint32_t>(m.num_states - 1));
      for (std::size_t e = 0; e < m.output.size(); ++e) {
        m.output[e] = out(rng);
        m.next[e] = st(rng);
      }
      co_simulate(m, rng, 64);
    }
  }

  TEST_CASE("appendix arbiter is realizable with two states") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json");
    auto sol = synth::synthesize(spec, 4, Seconds(30));
    REQUIRE(sol.status == SynStatus::Realizable);
    CHECK(sol.realizable == true);
    REQUIRE(sol.circuit);
    CHECK(states_in(sol.detailed_status) <= 2);
    auto c = aiger::parse_aag(*sol.circuit);
    CHECK(mc::check(c, spec, true, Seconds(10)).status == mc::McStatus::Satisfied);
    // Minimality: one state fewer is not enough.
    CHECK(synth::synthesize(spec, states_in(sol.detailed_status) - 1, Seconds(30)).status == SynStatus::Nonsuccess);
  }

  TEST_CASE("trivial guarantee") {
    auto spec = make_spec({"i"}, {"o"}, {"true"});
    auto sol = synth::synthesize(spec, 2, Seconds(10));
    REQUIRE(sol.status == SynStatus::Realizable);
    CHECK(states_in(sol.detailed_status) == 1);
    CHECK(aiger::parse_aag(*sol.circuit).latches.empty());
  }

  TEST_CASE("lookahead spec is unrealizable") {
    auto spec = load_spec_file(NEUROSYNT_TEST_DATA "/unrealizable.json");
    CHECK_FALSE(synth::find_strategy(spec, 3, Deadline::never()).machine);
    auto sol = synth::synthesize(spec, 3, Seconds(30));
    REQUIRE(sol.status == SynStatus::Unrealizable);
    CHECK(sol.realizable == false);
    CHECK(states_in(sol.detailed_status) == 1);
    CHECK(mc::check(aiger::parse_aag(*sol.circuit), spec, false, Seconds(10)).status == mc::McStatus::Satisfied);
  }

  TEST_CASE("moore timing") {
    auto same = make_spec({"i"}, {"o"}, {"G (i <-> o)"}, ltl::Semantics::Moore);
    auto sol = synth::synthesize(same, 2, Seconds(10));
    CHECK(sol.status == SynStatus::Unrealizable);
    same.semantics = ltl::Semantics::Mealy;
    CHECK(synth::synthesize(same, 2, Seconds(10)).status == SynStatus::Realizable);
    auto later = make_spec({"i"}, {"o"}, {"G (i <-> X o)"}, ltl::Semantics::Moore);
    auto ok = synth::synthesize(later, 2, Seconds(10));
    REQUIRE(ok.status == SynStatus::Realizable);
    CHECK(mc::check(aiger::parse_aag(*ok.circuit), later, true, Seconds(10)).status == mc::McStatus::Satisfied);
  }

  TEST_CASE("assumptions and budgets") {
    auto spec = make_spec({"r"}, {"g"}, {"G F g", "G (g -> r)"});
    CHECK(synth::synthesize(spec, 2, Seconds(10)).status == SynStatus::Unrealizable);
    spec.assumptions = {ltl::parse("G F r")};
    CHECK(synth::synthesize(spec, 2, Seconds(10)).status == SynStatus::Realizable);
    CHECK(synth::synthesize(spec, 2, Seconds(0)).status == SynStatus::Timeout);
  }

  TEST_CASE("every verdict on random small specs is backed by a verified circuit") {
    std::mt19937_64 rng(8);
    const std::vector<std::string> pool = {"G (i -> F o)", "G (o -> X !o)", "G F o", "F G !o", "G (i <-> X o)",
                                           "G (o <-> i)", "i U o", "G (i -> X o)", "G F i -> G F o", "G !(o & i)",
                                           "F o", "G (o -> i)"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), count(1, 3), sem(0, 1);
    int decided = 0;
    for (int k = 0; k < 40; ++k) {
      std::vector<std::string> g;
      for (std::size_t j = count(rng); j > 0; --j) g.push_back(pool[pick(rng)]);
      auto spec = make_spec({"i"}, {"o"}, g, sem(rng) ? ltl::Semantics::Moore : ltl::Semantics::Mealy);
      auto sol = synth::synthesize(spec, 3, Seconds(20));
      if (sol.status == SynStatus::Realizable || sol.status == SynStatus::Unrealizable) {
        ++decided;
        bool realizable = sol.status == SynStatus::Realizable;
        CHECK(mc::check(aiger::parse_aag(*sol.circuit), spec, realizable, Seconds(10)).status ==
              mc::McStatus::Satisfied);
      } else {
        CHECK(sol.status == SynStatus::Nonsuccess);
      }
    }
    CHECK(decided > 30);
  }
}
