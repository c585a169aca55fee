#include <doctest.h>

#include <sstream>

#include "neurosynt/aiger.hpp"
#include "neurosynt/datagen.hpp"
#include "neurosynt/model_checker.hpp"

using namespace neurosynt;
using namespace neurosynt::datagen;

namespace {

const char* kDummyCircuit = "aag 0 0 0 0 0\n";

PatternLibrary corpus_library() { return mine_patterns(load_corpus(NEUROSYNT_TEST_DATA "/corpus")); }

Pattern guarantee(const std::string& text) {
  auto f = ltl::parse(text);
  ltl::DecompSpec s;
  for (const auto& a : ltl::atoms(f)) (a.rfind("p_in_", 0) == 0 ? s.inputs : s.outputs).push_back(a);
  return make_pattern(f, s, PatternKind::Guarantee);
}

ltl::Formula nexts(std::size_t k, const std::string& atom) {
  auto f = ltl::Atom(atom);
  while (k--) f = ltl::Next(f);
  return f;
}

// Labels by counting properties; no circuits, so verification must be off.
Oracle counting_oracle(std::function<bool(std::size_t a, std::size_t g)> realizable) {
  return [realizable](const ltl::DecompSpec& s) {
    SynSolution r;
    const bool ok = realizable(s.assumptions.size(), s.guarantees.size());
    r.status = ok ? SynStatus::Realizable : SynStatus::Unrealizable;
    r.realizable = ok;
    r.circuit = kDummyCircuit;
    return r;
  };
}

// Chain of `ands` AND gates over `inputs` inputs; max_var = inputs + ands.
DatasetSample with_circuit(std::size_t inputs, std::size_t ands, bool realizable = true) {
  aiger::Circuit c;
  c.max_var = static_cast<std::uint32_t>(inputs + ands);
  for (std::size_t i = 0; i < inputs; ++i) c.inputs.push_back(static_cast<std::uint32_t>(2 * (i + 1)));
  std::uint32_t prev = 2;
  for (std::size_t k = 0; k < ands; ++k) {
    auto lhs = static_cast<std::uint32_t>(2 * (inputs + k + 1));
    c.ands.push_back({lhs, prev, 2});
    prev = lhs;
  }
  c.outputs.push_back(prev);
  DatasetSample s;
  s.circuit = aiger::serialize_aag(c);
  s.realizable = realizable;
  return s;
}

}  // namespace

TEST_SUITE("datagen") {
  TEST_CASE("mining the full-arbiter corpus") {
    auto lib = corpus_library();
    CHECK(lib.report.seen == 29);
    CHECK(lib.report.duplicates == 20);
    CHECK(lib.guarantees.size() == 7);
    CHECK(lib.assumptions.size() == 2);
    auto has = [&](const std::string& text) {
      for (const auto& p : lib.guarantees)
        if (ltl::to_string(p.formula) == text) return true;
      return false;
    };
    CHECK(has("(G ((p_in_0) -> (F (p_out_0))))"));
    CHECK(has("(G (! ((p_out_0) & (p_out_1))))"));
    for (const auto& p : lib.guarantees) CHECK(p.kind == PatternKind::Guarantee);
  }

  TEST_CASE("mining exclusions") {
    ltl::DecompSpec s;
    std::vector<ltl::Formula> ins;
    for (int k = 0; k < 16; ++k) {
      s.inputs.push_back("i_" + std::to_string(k));
      ins.push_back(ltl::Atom(s.inputs.back()));
    }
    s.outputs = {"o"};
    s.guarantees = {ltl::Globally(ltl::conjunction(ins)), nexts(30, "o"), nexts(29, "o")};
    auto lib = mine_patterns({s});
    CHECK(lib.report.too_many_atoms == 1);
    CHECK(lib.report.too_large == 1);
    REQUIRE(lib.guarantees.size() == 1);
    CHECK(ltl::ast_size(lib.guarantees[0].formula) == 30);
  }

  TEST_CASE("placeholders follow first occurrence per role") {
    ltl::DecompSpec s{{"a", "b"}, {"x", "y"}, {}, {}};
    auto p = make_pattern(ltl::parse("G (y & b -> X (x | a))"), s, PatternKind::Guarantee);
    CHECK(ltl::to_string(p.formula) == "(G (((p_out_0) & (p_in_0)) -> (X ((p_out_1) | (p_in_1)))))");
    CHECK(p.num_inputs == 2);
    CHECK(p.num_outputs == 2);
  }

  TEST_CASE("atom bias") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> cands{"r_0", "r_1"}, present{"r_0"};
    int hits = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) hits += pick_atom(rng, cands, present) == "r_0";
    CHECK(double(hits) / n == doctest::Approx(0.8).epsilon(0.025));
  }

  TEST_CASE("a lone true pattern is realizable after one draw") {
    PatternLibrary lib;
    lib.guarantees.push_back(guarantee("true"));
    AssembleOptions opts;
    opts.verify = false;
    AssembleTrace t;
    auto s = assemble(lib, 1, counting_oracle([](auto, auto) { return true; }), true, opts, &t);
    CHECK(s.realizable);
    CHECK(s.spec.guarantees.size() == 1);
    CHECK(t.oracle_calls == 1);
    CHECK(t.reason == StopReason::NoSuitableAssumption);
    CHECK_THROWS_AS(assemble(lib, 1, counting_oracle([](auto, auto) { return true; }), false, opts),
                    GenerationExhausted);
  }

  TEST_CASE("stopping criteria") {
    PatternLibrary lib;
    for (std::size_t k = 0; k < 12; ++k) lib.guarantees.push_back(guarantee(ltl::to_string(nexts(k, "p_out_0"))));
    lib.assumptions.push_back(guarantee("G F p_in_0"));
    lib.assumptions.push_back(guarantee("G p_in_0"));
    lib.assumptions.push_back(guarantee("F p_in_0"));
    for (auto& p : lib.assumptions) p.kind = PatternKind::Assumption;
    AssembleOptions opts;
    opts.verify = false;
    AssembleTrace t;

    auto all = assemble(lib, 3, counting_oracle([](auto, auto) { return true; }), true, opts, &t);
    CHECK(t.reason == StopReason::MaxGuarantees);
    CHECK(all.spec.guarantees.size() == kMaxGuarantees);

    auto never = counting_oracle([](auto, std::size_t g) { return g == 0; });
    auto u = assemble(lib, 3, never, false, opts, &t);
    CHECK(t.reason == StopReason::NoSuitableAssumption);
    CHECK(t.oracle_calls == 1 + kAssumptionAttempts);
    CHECK(u.spec.guarantees.size() == 1);
    CHECK(u.spec.assumptions.empty());

    // Each assumption repairs exactly one extra guarantee.
    auto seesaw = counting_oracle([](std::size_t a, std::size_t g) { return a + 1 >= g; });
    auto r = assemble(lib, 5, seesaw, true, opts, &t);
    CHECK(t.reason == StopReason::MaxAssumptions);
    CHECK(r.spec.assumptions.size() == kMaxAssumptions);
    CHECK(r.spec.guarantees.size() == 4);
    auto un = assemble(lib, 5, seesaw, false, opts);
    CHECK(un.spec.assumptions.size() == 3);
    CHECK(un.spec.guarantees.size() == 5);
    CHECK_FALSE(un.realizable);

    Oracle timeout = [](const ltl::DecompSpec&) {
      SynSolution s;
      s.status = SynStatus::Timeout;
      return s;
    };
    CHECK_THROWS_AS(assemble(lib, 3, timeout, true, opts, &t), GenerationExhausted);
    CHECK(t.reason == StopReason::OracleGaveUp);
  }

  TEST_CASE("assembly with the bounded synthesizer yields verified samples") {
    auto lib = corpus_library();
    AssembleOptions opts;
    opts.max_inputs = 2;
    opts.max_outputs = 2;
    auto oracle = bounded_synth_oracle(Seconds(2), 2);
    int made = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const bool target = seed % 2 == 0;
      try {
        auto s = assemble(lib, seed, oracle, target, opts);
        ++made;
        CHECK(s.realizable == target);
        CHECK(s.spec.guarantees.size() <= kMaxGuarantees);
        CHECK(s.spec.assumptions.size() <= kMaxAssumptions);
        for (const auto& g : s.spec.guarantees) CHECK(ltl::ast_size(g) <= kMaxPropertySize);
        s.spec.validate();
        auto m = mc::check(aiger::parse_aag(s.circuit), s.spec, s.realizable, Seconds(30));
        CHECK(m.status == mc::McStatus::Satisfied);
        CHECK(assemble(lib, seed, oracle, target, opts) == s);
      } catch (const GenerationExhausted&) {
      }
    }
    CHECK(made >= 3);
  }

  TEST_CASE("augmentation") {
    PatternLibrary fourteen;
    fourteen.guarantees.push_back(guarantee(ltl::to_string(nexts(13, "p_out_0"))));
    REQUIRE(ltl::ast_size(fourteen.guarantees[0].formula) == 14);
    auto fused = augment(fourteen, 1, PatternKind::Guarantee);
    CHECK(ltl::ast_size(fused.formula) == 29);
    CHECK(fused.formula.op() == ltl::Op::And);
    CHECK(fused.num_outputs >= 1);
    CHECK(fused.num_outputs <= 2);

    PatternLibrary thirty;
    thirty.guarantees.push_back(guarantee(ltl::to_string(nexts(29, "p_out_0"))));
    CHECK(augment(thirty, 1, PatternKind::Guarantee) == thirty.guarantees[0]);

    auto lib = corpus_library();
    auto big = augment_library(lib, 9, 40);
    double before = 0, after = 0;
    for (const auto& p : lib.guarantees) before += double(ltl::ast_size(p.formula));
    for (const auto& p : big.guarantees) {
      after += double(ltl::ast_size(p.formula));
      CHECK(ltl::ast_size(p.formula) <= kMaxPropertySize);
    }
    CHECK(after / double(big.guarantees.size()) > before / double(lib.guarantees.size()));
  }

  TEST_CASE("circuit filter") {
    std::vector<DatasetSample> in;
    for (int k = 0; k < 10; ++k) in.push_back(with_circuit(1, 3));
    auto out = filter_circuits(in);
    CHECK(out.size() == 2);

    std::vector<DatasetSample> mixed;
    for (std::size_t k = 0; k < 10; ++k) mixed.push_back(with_circuit(1, k));
    mixed.push_back(with_circuit(58, 3));  // max_var 61
    mixed.push_back(with_circuit(57, 3));  // max_var 60
    auto kept = filter_circuits(mixed);
    CHECK(kept.size() == 11);
    for (const auto& s : kept) CHECK(aiger::stats(aiger::parse_aag(s.circuit)).max_var <= kMaxCircuitVar);
  }

  TEST_CASE("stats and jsonl") {
    std::vector<DatasetSample> samples{with_circuit(1, 2), with_circuit(2, 2, false), with_circuit(1, 5)};
    samples[0].spec = {{"i_0"}, {"o_0"}, {}, {ltl::parse("G (i_0 -> o_0)")}};
    samples[1].spec = {{"i_0"}, {"o_0", "o_1"}, {ltl::parse("F i_0")}, {ltl::parse("G o_0"), ltl::parse("o_1")}};
    samples[2].spec = {{}, {"o_0"}, {}, {ltl::parse("true")}};
    auto st = dataset_stats(samples);
    CHECK(st.samples == 3);
    CHECK(st.realizable == 2);
    CHECK(st.num_aps.at(2) == 1);
    CHECK(st.num_aps.at(3) == 1);
    CHECK(st.num_aps.at(1) == 1);
    CHECK(st.max_var.at(3) == 1);
    CHECK(st.max_var.at(4) == 1);
    CHECK(st.max_var.at(6) == 1);
    CHECK(st.mean_properties == doctest::Approx(5.0 / 3));
    std::ostringstream csv;
    write_stats_csv(st, csv);
    CHECK(csv.str().rfind("metric,value,count\nsamples,,3\nrealizable,,2\nunrealizable,,1\n", 0) == 0);

    std::stringstream io;
    write_jsonl(samples, io);
    CHECK(read_jsonl(io) == samples);
  }
}
