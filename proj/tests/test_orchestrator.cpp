#include <doctest.h>

#include <set>
#include <sstream>

#include "neurosynt/benchmark.hpp"
#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/config.hpp"
#include "neurosynt/portfolio.hpp"
#include "neurosynt/spec_io.hpp"
#include "support/stubs.hpp"

using namespace neurosynt;
using namespace neurosynt::orch;
using namespace std::chrono_literals;

namespace {

const char* kArbiterCircuit = "aag 3 2 1 2 0\n2\n4\n6 7\n7\n6\ni0 r_0\ni1 r_1\nl0 l0\no0 g_0\no1 g_1\n";
// Grants both requests all the time.
const char* kGreedyCircuit = "aag 2 2 0 2 0\n2\n4\n1\n1\ni0 r_0\ni1 r_1\no0 g_0\no1 g_1\n";

SynSolution realizable_answer(const std::string& circuit, const std::string& tool) {
  SynSolution s;
  s.status = SynStatus::Realizable;
  s.realizable = true;
  s.circuit = circuit;
  s.tool = tool;
  return s;
}

wire::SynProblem arbiter_problem() {
  return {{{"problem_id", "arbiter"}}, load_spec_file(NEUROSYNT_TEST_DATA "/arbiter.json")};
}

struct Cluster {
  std::shared_ptr<wire::MessageLog> log = std::make_shared<wire::MessageLog>();
  wire::Server mc{wire::Role::ModelChecker, "mc", stubs::model_checker(), log};
  std::unique_ptr<wire::Server> symbolic, neural;
  Portfolio portfolio;

  Cluster(std::optional<wire::Handlers> sym, std::optional<stubs::NeuralScript> neu, Mode mode) {
    mc.start();
    if (sym) {
      symbolic = std::make_unique<wire::Server>(wire::Role::Symbolic, "symbolic", *sym, log);
      symbolic->start();
      portfolio.solvers.push_back(make_http_solver("symbolic-stub", symbolic->url(), true));
    }
    if (neu) {
      neural = std::make_unique<wire::Server>(wire::Role::Neural, "neural", stubs::neural(*neu, mc.url()), log);
      neural->start();
      portfolio.solvers.push_back(make_http_solver("neural-stub", neural->url(), false));
    }
    portfolio.model_checker = make_http_model_checker("mc", mc.url());
    portfolio.mode = mode;
    // The neural stub talks to the model checker directly, so that service needs its setup too.
    wire::Client(mc.url()).setup({}, Deadline::after(Seconds(5)));
    setup_portfolio(portfolio, Deadline::after(Seconds(5)));
  }
};

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("appendix configuration") {
    std::vector<std::string> warnings;
    auto cfg = load_config(NEUROSYNT_TEST_DATA "/appendix_config.yaml", &warnings);
    REQUIRE(cfg.symbolic_solver);
    REQUIRE(cfg.neural_solver);
    REQUIRE(cfg.model_checker);
    CHECK(cfg.symbolic_solver->tool == "bounded-synth");
    CHECK(cfg.symbolic_solver->tool_args.at("timeout") == "120");
    CHECK(cfg.symbolic_solver->tool_args.at("--threads") == "4");
    CHECK(cfg.symbolic_solver->tool_args.at("--minimize").empty());
    CHECK(cfg.neural_solver->tool_setup_args.at("beam_size") == "32");
    CHECK(std::stod(cfg.neural_solver->tool_setup_args.at("alpha")) == doctest::Approx(0.5));
    CHECK(cfg.neural_solver->tool_setup_args.at("model") == "ht-50");
    CHECK(cfg.model_checker->tool_args.at("timeout") == "10");
    CHECK(cfg.mode == Mode::FastestWins);
    CHECK(warnings.size() == 8);
  }

  TEST_CASE("minimal config and errors") {
    auto cfg = parse_config("symbolic_solver:\n  tool: bounded-synth\n");
    CHECK_FALSE(cfg.neural_solver);
    CHECK_FALSE(cfg.model_checker);
    auto p = make_portfolio(cfg);
    CHECK(p.solvers.size() == 1);
    CHECK(p.model_checker->name() == kBuiltinModelChecker);

    auto kind = [](const char* text) {
      try {
        parse_config(text);
      } catch (const ConfigError& e) {
        return e.kind();
      }
      FAIL("accepted: " << text);
      return ConfigError::Kind::Syntax;
    };
    CHECK(kind("model_checker:\n  tool: neurosynt-mc\n") == ConfigError::Kind::MissingSection);
    CHECK(kind("symbolic_solver:\n  tool_args: {}\n") == ConfigError::Kind::MissingSection);
    CHECK(kind("symbolic_solver: 3\n") == ConfigError::Kind::BadType);
    CHECK(kind("symbolic_solver:\n  tool: x\n  tool_args: [1, 2]\n") == ConfigError::Kind::BadType);
    CHECK(kind("symbolic_solver:\n  tool: x\n  tool_args:\n    a: [1]\n") == ConfigError::Kind::BadType);
    CHECK(kind("symbolic_solver:\n  tool: x\nmode: sometimes\n") == ConfigError::Kind::BadType);
    CHECK(kind("symbolic_solver: [") == ConfigError::Kind::Syntax);
    CHECK_THROWS_AS(make_portfolio(parse_config("neural_solver:\n  tool: ml2solver\n")), PortfolioError);
  }

  TEST_CASE("dump and reload preserves every key") {
    auto cfg = load_config(NEUROSYNT_TEST_DATA "/appendix_config.yaml");
    cfg.mode = Mode::WaitAll;
    cfg.symbolic_solver->tool_args["odd: key"] = "value with \"quotes\"";
    CHECK(parse_config(dump_config(cfg)) == cfg);
  }
}

TEST_SUITE("portfolio") {
  TEST_CASE("fast verified neural answer wins and the slow solver is cancelled") {
    stubs::NeuralScript script{10ms, [](const wire::SynProblem&) { return std::make_pair(std::string(kArbiterCircuit), true); }};
    Cluster c(stubs::symbolic(5000ms, realizable_answer(kArbiterCircuit, "symbolic-stub")), script, Mode::FastestWins);
    auto r = run_portfolio(c.portfolio, arbiter_problem(), Deadline::after(Seconds(30)));
    CHECK(r.chosen_tool == "neural-stub");
    CHECK(r.chosen.status == SynStatus::Realizable);
    CHECK(r.wall_time < 1s);
    REQUIRE(r.all_results.size() == 2);
    CHECK(r.all_results[0].solution.status == SynStatus::Timeout);
    REQUIRE(r.all_results[1].verification);
    CHECK(r.all_results[1].verification->status == mc::McStatus::Satisfied);
  }

  TEST_CASE("wrong neural circuit is recorded but never chosen") {
    stubs::NeuralScript script{1ms, [](const wire::SynProblem&) { return std::make_pair(std::string(kGreedyCircuit), true); },
                               true};
    Cluster c(stubs::symbolic(50ms, realizable_answer(kArbiterCircuit, "symbolic-stub")), script, Mode::FastestWins);
    auto r = run_portfolio(c.portfolio, arbiter_problem(), Deadline::after(Seconds(30)));
    CHECK(r.chosen_tool == "symbolic-stub");
    CHECK(r.chosen.circuit == std::string(kArbiterCircuit));
    const auto& neural = r.all_results[1];
    CHECK_FALSE(neural.accepted);
    REQUIRE(neural.verification);
    CHECK(neural.verification->status == mc::McStatus::Violated);
    REQUIRE(neural.unsound);
    CHECK(neural.unsound->model_checking_solution->status == mc::McStatus::Satisfied);  // the stub lied
  }

  TEST_CASE("failure ordering") {
    SynSolution timeout;
    timeout.status = SynStatus::Timeout;
    stubs::NeuralScript slow{5000ms, [](const wire::SynProblem&) { return std::make_pair(std::string(kArbiterCircuit), true); }};
    Cluster both(stubs::symbolic(0ms, timeout), slow, Mode::WaitAll);
    auto problem = arbiter_problem();
    auto r = run_portfolio(both.portfolio, problem, Deadline::after(Seconds(0.3)));
    CHECK(r.chosen.status == SynStatus::Timeout);

    SynSolution error;
    error.status = SynStatus::Error;
    stubs::NeuralScript wrong{1ms, [](const wire::SynProblem&) { return std::make_pair(std::string(kGreedyCircuit), true); }};
    Cluster mixed(stubs::symbolic(0ms, error), wrong, Mode::WaitAll);
    auto m = run_portfolio(mixed.portfolio, problem, Deadline::after(Seconds(10)));
    CHECK(m.chosen.status == SynStatus::Nonsuccess);
    CHECK_FALSE(m.chosen.circuit);
  }

  TEST_CASE("a dead neural service leaves the symbolic answer unchanged") {
    Portfolio alone;
    alone.solvers = {make_bounded_synth({{"timeout", "20"}})};
    alone.model_checker = make_builtin_model_checker();
    Portfolio with_dead = alone;
    with_dead.solvers.push_back(make_http_solver("neural", "http://127.0.0.1:1", false));
    auto problem = arbiter_problem();
    auto a = run_portfolio(alone, problem, Deadline::after(Seconds(20)));
    auto b = run_portfolio(with_dead, problem, Deadline::after(Seconds(20)));
    CHECK(a.chosen.status == SynStatus::Realizable);
    CHECK(b.chosen.status == a.chosen.status);
    CHECK(b.chosen.circuit == a.chosen.circuit);
    CHECK(b.all_results[1].solution.status == SynStatus::Error);
    CHECK_THROWS_AS(setup_portfolio(with_dead, Deadline::after(Seconds(2))), PortfolioError);
  }
}

TEST_SUITE("benchmark") {
  TEST_CASE("csv rows match an independent recount") {
    auto p = make_portfolio(load_config(NEUROSYNT_TEST_DATA "/bounded_synth.yaml"));
    auto samples = list_samples(NEUROSYNT_TEST_DATA "/bench");
    REQUIRE(samples.size() == 10);
    std::ostringstream csv;
    auto rows = run_benchmark(p, samples, csv, {2, Seconds(60)});
    CHECK(rows.size() == 10);

    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == kBenchmarkHeader);
    std::size_t n = 0;
    while (std::getline(in, line)) {
      std::vector<std::string> cols;
      std::stringstream ls(line);
      for (std::string col; std::getline(ls, col, ',');) cols.push_back(col);
      if (line.back() == ',') cols.push_back("");
      REQUIRE(cols.size() == 10);
      CHECK(cols[0] == samples[n].stem().string());
      CHECK(cols[1] == "bounded-synth");
      CHECK(std::stod(cols[4]) >= 0);
      const auto& row = rows[n];
      CHECK((row.status == "realizable" || row.status == "unrealizable"));
      ++n;
    }
    CHECK(n == 10);
  }
}
