// neurosynt: portfolio synthesis, benchmarking, services and data generation.
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "neurosynt/aiger.hpp"
#include "neurosynt/benchmark.hpp"
#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/config.hpp"
#include "neurosynt/datagen.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/portfolio.hpp"
#include "neurosynt/service.hpp"
#include "neurosynt/spec_io.hpp"

using namespace neurosynt;

namespace {

enum Exit { kOk = 0, kParseError = 1, kNoSolution = 2, kServiceFailure = 3 };

orch::PortfolioConfig read_config(const std::string& path) {
  std::vector<std::string> warnings;
  auto cfg = orch::load_config(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

int cmd_synthesize(const std::string& spec_path, const std::string& config_path, const std::string& mode,
                   double timeout) {
  wire::SynProblem problem;
  orch::Portfolio portfolio;
  try {
    problem.decomp_specification = load_spec_file(spec_path);
    auto cfg = read_config(config_path);
    if (!mode.empty()) cfg.mode = orch::parse_mode(mode);
    portfolio = orch::make_portfolio(cfg);
  } catch (const ltl::ParseError& e) {
    std::cerr << spec_path << ": " << e.what() << "\n";
    return kParseError;
  } catch (const orch::PortfolioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kServiceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  problem.parameters["problem_id"] = std::filesystem::path(spec_path).stem().string();

  const auto deadline = Deadline::after(Seconds(timeout));
  try {
    orch::setup_portfolio(portfolio, deadline);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kServiceFailure;
  }
  auto r = orch::run_portfolio(portfolio, problem, deadline);
  const auto& s = r.chosen;
  if ((s.status == SynStatus::Realizable || s.status == SynStatus::Unrealizable) && s.circuit) {
    std::cout << (s.status == SynStatus::Realizable ? "REALIZABLE" : "UNREALIZABLE") << "\n" << *s.circuit;
    if (!s.circuit->empty() && s.circuit->back() != '\n') std::cout << "\n";
    return kOk;
  }
  std::cerr << to_string(s.status);
  if (!s.detailed_status.empty()) std::cerr << ": " << s.detailed_status;
  std::cerr << "\n";
  for (const auto& t : r.all_results)
    std::cerr << "  " << t.tool << ": " << to_string(t.solution.status) << " " << t.solution.detailed_status << "\n";
  return s.status == SynStatus::Error ? kServiceFailure : kNoSolution;
}

int cmd_benchmark(const std::string& dataset, const std::string& config_path, const std::string& out,
                  std::size_t jobs, double timeout) {
  orch::Portfolio portfolio;
  std::vector<std::filesystem::path> samples;
  try {
    portfolio = orch::make_portfolio(read_config(config_path));
    samples = orch::list_samples(dataset);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  try {
    orch::setup_portfolio(portfolio, Deadline::after(Seconds(30)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kServiceFailure;
  }
  std::ofstream csv(out);
  if (!csv) {
    std::cerr << "error: cannot write " << out << "\n";
    return kParseError;
  }
  auto rows = orch::run_benchmark(portfolio, samples, csv, {jobs, Seconds(timeout)});
  std::cerr << samples.size() << " samples, " << rows.size() << " rows written to " << out << "\n";
  return kOk;
}

wire::Server* g_server = nullptr;

int cmd_serve(const std::string& role_name, const std::string& host, int port, std::size_t max_states) {
  wire::Handlers h;
  wire::Role role;
  try {
    role = wire::parse_role(role_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  if (role == wire::Role::Symbolic) {
    h.synthesize = [max_states](const wire::SynProblem& p, const Deadline& d) {
      std::size_t k = max_states;
      if (auto it = p.parameters.find("max_states"); it != p.parameters.end()) k = std::stoul(it->second);
      return synth::synthesize(p.decomp_specification, k, d);
    };
  } else if (role == wire::Role::ModelChecker) {
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
  } else {
    std::cerr << "error: no built-in neural solver; run an external service speaking the wire protocol\n";
    return kParseError;
  }
  wire::Server server(role, role == wire::Role::Symbolic ? synth::kToolName : orch::kBuiltinModelChecker, h);
  g_server = &server;
  std::signal(SIGINT, [](int) { g_server->stop(); });
  std::signal(SIGTERM, [](int) { g_server->stop(); });
  std::cerr << "serving " << role_name << " on " << host << ":" << port << "\n";
  server.run(host, port);
  return kOk;
}

struct DatagenArgs {
  std::string corpus, out, stats_csv, oracle_url;
  std::uint64_t seed = 0;
  std::size_t count = 100, augment = 0, max_inputs = 5, max_outputs = 5, max_states = 3;
  double oracle_timeout = 5;
  bool filter = false;
};

int cmd_datagen_generate(const DatagenArgs& a) {
  datagen::PatternLibrary lib;
  try {
    lib = datagen::mine_patterns(datagen::load_corpus(a.corpus));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  std::cerr << "patterns: " << lib.guarantees.size() << " guarantees, " << lib.assumptions.size()
            << " assumptions (" << lib.report.seen << " seen, " << lib.report.too_many_atoms << " too many atoms, "
            << lib.report.too_large << " too large, " << lib.report.duplicates << " duplicates)\n";
  if (a.augment) lib = datagen::augment_library(lib, a.seed, a.augment);

  datagen::Oracle oracle;
  try {
    oracle = a.oracle_url.empty()
                 ? datagen::bounded_synth_oracle(Seconds(a.oracle_timeout), a.max_states)
                 : datagen::solver_oracle(orch::make_http_solver("oracle", a.oracle_url, true), Seconds(a.oracle_timeout));
  } catch (const datagen::OracleUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kServiceFailure;
  }
  datagen::GenerateOptions opts;
  opts.count = a.count;
  opts.assemble.max_inputs = a.max_inputs;
  opts.assemble.max_outputs = a.max_outputs;
  std::vector<datagen::DatasetSample> samples;
  try {
    samples = datagen::generate(lib, a.seed, oracle, opts);
  } catch (const datagen::OracleUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kServiceFailure;
  } catch (const datagen::GenerationExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoSolution;
  }
  if (a.filter) samples = datagen::filter_circuits(samples);
  std::ofstream out(a.out);
  datagen::write_jsonl(samples, out);
  auto st = datagen::dataset_stats(samples);
  datagen::write_stats_text(st, std::cerr);
  if (!a.stats_csv.empty()) {
    std::ofstream csv(a.stats_csv);
    datagen::write_stats_csv(st, csv);
  }
  return kOk;
}

std::optional<std::vector<datagen::DatasetSample>> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return std::nullopt;
  }
  try {
    return datagen::read_jsonl(in);
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural/symbolic portfolio for reactive LTL synthesis"};
  app.require_subcommand(1);

  std::string spec_path, config_path, mode, dataset, out = "results.csv", role = "symbolic", host = "127.0.0.1";
  double timeout = 120;
  std::size_t jobs = 1, max_states = synth::kDefaultMaxStates;
  int port = 8080;

  auto* syn = app.add_subcommand("synthesize", "Solve one assume-guarantee specification");
  syn->add_option("spec", spec_path, "Specification JSON")->required();
  syn->add_option("--config", config_path, "Portfolio YAML")->required();
  syn->add_option("--mode", mode, "fastest or all")->check(CLI::IsMember({"fastest", "all"}));
  syn->add_option("--timeout", timeout, "Seconds for the whole run");

  auto* bench = app.add_subcommand("benchmark", "Solve a dataset and write a CSV");
  bench->add_option("dataset", dataset, "Directory of spec JSON files or an index file")->required();
  bench->add_option("--config", config_path, "Portfolio YAML")->required();
  bench->add_option("--out", out, "CSV path");
  bench->add_option("--jobs", jobs, "Samples in flight");
  bench->add_option("--timeout", timeout, "Seconds per sample");

  auto* serve = app.add_subcommand("serve", "Run a built-in solver as a wire-protocol service");
  serve->add_option("--role", role, "symbolic or mc")->check(CLI::IsMember({"symbolic", "mc", "neural"}));
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--max-states", max_states, "Bounded synthesis state bound");

  auto* gen = app.add_subcommand("datagen", "Generate, filter and summarize synthesis datasets");
  gen->require_subcommand(1);
  DatagenArgs d;
  auto* generate = gen->add_subcommand("generate", "Mine patterns from a corpus and assemble labelled specs");
  generate->add_option("--corpus", d.corpus, "Directory of spec JSON files")->required();
  generate->add_option("--out", d.out, "JSON-lines output")->required();
  generate->add_option("--count", d.count);
  generate->add_option("--seed", d.seed);
  generate->add_option("--augment", d.augment, "Replace the library by this many fused patterns");
  generate->add_option("--max-inputs", d.max_inputs);
  generate->add_option("--max-outputs", d.max_outputs);
  generate->add_option("--oracle-timeout", d.oracle_timeout, "Seconds per oracle call");
  generate->add_option("--max-states", d.max_states, "Bound of the built-in oracle");
  generate->add_option("--oracle-url", d.oracle_url, "Symbolic solver service to label with instead");
  generate->add_flag("--filter", d.filter, "Apply the circuit filter");
  generate->add_option("--stats", d.stats_csv, "Statistics CSV path");

  std::string in_path;
  auto* filter = gen->add_subcommand("filter", "Apply the circuit filter to a dataset");
  filter->add_option("input", in_path)->required();
  filter->add_option("--out", d.out)->required();
  auto* stats = gen->add_subcommand("stats", "Summarize a dataset");
  stats->add_option("input", in_path)->required();
  stats->add_option("--csv", d.stats_csv, "Statistics CSV path");

  CLI11_PARSE(app, argc, argv);

  if (*syn) return cmd_synthesize(spec_path, config_path, mode, timeout);
  if (*bench) return cmd_benchmark(dataset, config_path, out, jobs, timeout);
  if (*serve) return cmd_serve(role, host, port, max_states);
  if (*generate) return cmd_datagen_generate(d);
  auto samples = read_dataset(in_path);
  if (!samples) return kParseError;
  if (*filter) {
    auto kept = datagen::filter_circuits(*samples);
    std::ofstream o(d.out);
    datagen::write_jsonl(kept, o);
    std::cerr << kept.size() << " of " << samples->size() << " samples kept\n";
    return kOk;
  }
  auto st = datagen::dataset_stats(*samples);
  datagen::write_stats_text(st, std::cout);
  if (!d.stats_csv.empty()) {
    std::ofstream csv(d.stats_csv);
    datagen::write_stats_csv(st, csv);
  }
  return kOk;
}
