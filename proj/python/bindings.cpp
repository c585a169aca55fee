#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neurosynt/aiger.hpp"
#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/config.hpp"
#include "neurosynt/datagen.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/portfolio.hpp"
#include "neurosynt/spec_io.hpp"

namespace py = pybind11;
using namespace neurosynt;

namespace {

ltl::Notation notation(const std::string& s) {
  if (s == "infix") return ltl::Notation::Infix;
  if (s == "prefix") return ltl::Notation::Prefix;
  throw py::value_error("notation must be 'infix' or 'prefix'");
}

py::dict solution_dict(const SynSolution& s) {
  py::dict d;
  d["status"] = std::string(to_string(s.status));
  d["realizable"] = s.realizable ? py::object(py::bool_(*s.realizable)) : py::object(py::none());
  d["circuit"] = s.circuit ? py::object(py::str(*s.circuit)) : py::object(py::none());
  d["detailed_status"] = s.detailed_status;
  d["tool"] = s.tool;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reactive LTL synthesis: formulas, AIGER circuits, model checking, bounded synthesis, portfolio runs";

  py::register_exception<ltl::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ltl::SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<aiger::AigerError>(m, "AigerError", PyExc_ValueError);

  m.def(
      "format_formula",
      [](const std::string& text, const std::string& in, const std::string& out) {
        return ltl::to_string(ltl::parse(text, notation(in)), notation(out));
      },
      py::arg("text"), py::arg("notation") = "infix", py::arg("output") = "infix",
      "Parses a formula and prints it fully parenthesized (infix) or in Polish notation (prefix).");
  m.def(
      "ast_size", [](const std::string& text) { return ltl::ast_size(ltl::parse(text)); }, py::arg("text"));
  m.def(
      "eval_lasso",
      [](const std::string& text, const std::vector<std::vector<std::string>>& prefix,
         const std::vector<std::vector<std::string>>& cycle) {
        ltl::LassoTrace t;
        for (const auto& s : prefix) t.prefix.emplace_back(s.begin(), s.end());
        for (const auto& s : cycle) t.cycle.emplace_back(s.begin(), s.end());
        return ltl::eval_lasso(ltl::parse(text), t);
      },
      py::arg("formula"), py::arg("prefix"), py::arg("cycle"),
      "Satisfaction of an infix formula on prefix . cycle^omega; letters are lists of true atoms.");

  m.def(
      "normalize_aag", [](const std::string& text) { return aiger::serialize_aag(aiger::parse_aag(text)); },
      py::arg("text"));
  m.def(
      "aag_stats",
      [](const std::string& text) {
        auto s = aiger::stats(aiger::parse_aag(text));
        py::dict d;
        d["num_inputs"] = s.num_inputs;
        d["num_outputs"] = s.num_outputs;
        d["num_latches"] = s.num_latches;
        d["num_ands"] = s.num_ands;
        d["max_var"] = s.max_var;
        return d;
      },
      py::arg("text"));

  m.def(
      "synthesize",
      [](const std::string& spec_json, std::size_t max_states, double timeout) {
        auto spec = parse_spec_json(spec_json);
        SynSolution s;
        {
          py::gil_scoped_release release;
          s = synth::synthesize(spec, max_states, Seconds(timeout));
        }
        return solution_dict(s);
      },
      py::arg("spec_json"), py::arg("max_states") = synth::kDefaultMaxStates, py::arg("timeout") = 60.0,
      "Bounded synthesis of a system or environment strategy for an assume-guarantee JSON spec.");
  m.def(
      "model_check",
      [](const std::string& spec_json, const std::string& circuit, bool realizable, double timeout) {
        auto spec = parse_spec_json(spec_json);
        auto c = aiger::parse_aag(circuit);
        mc::McSolution r;
        {
          py::gil_scoped_release release;
          r = mc::check(c, spec, realizable, Seconds(timeout));
        }
        py::dict d;
        d["status"] = std::string(mc::to_string(r.status));
        d["detail"] = r.detail;
        return d;
      },
      py::arg("spec_json"), py::arg("circuit"), py::arg("realizable"), py::arg("timeout") = 60.0);
  m.def(
      "run_portfolio",
      [](const std::string& spec_json, const std::string& config_path, double timeout) {
        wire::SynProblem problem;
        problem.decomp_specification = parse_spec_json(spec_json);
        auto p = orch::make_portfolio(orch::load_config(config_path));
        orch::PortfolioResult r;
        {
          py::gil_scoped_release release;
          const auto deadline = Deadline::after(Seconds(timeout));
          orch::setup_portfolio(p, deadline);
          r = orch::run_portfolio(p, problem, deadline);
        }
        py::dict d = solution_dict(r.chosen);
        d["chosen_tool"] = r.chosen_tool;
        py::list all;
        for (const auto& t : r.all_results) {
          auto e = solution_dict(t.solution);
          e["tool"] = t.tool;
          e["accepted"] = t.accepted;
          e["wall_time"] = t.wall_time.count();
          all.append(e);
        }
        d["all_results"] = all;
        return d;
      },
      py::arg("spec_json"), py::arg("config_path"), py::arg("timeout") = 120.0);

  m.def(
      "generate_dataset",
      [](const std::string& corpus_dir, std::size_t count, std::uint64_t seed, std::size_t max_inputs,
         std::size_t max_outputs, double oracle_timeout) {
        auto lib = datagen::mine_patterns(datagen::load_corpus(corpus_dir));
        datagen::GenerateOptions opts;
        opts.count = count;
        opts.assemble.max_inputs = max_inputs;
        opts.assemble.max_outputs = max_outputs;
        std::vector<datagen::DatasetSample> samples;
        {
          py::gil_scoped_release release;
          samples = datagen::generate(lib, seed, datagen::bounded_synth_oracle(Seconds(oracle_timeout)), opts);
        }
        std::ostringstream out;
        datagen::write_jsonl(samples, out);
        return out.str();
      },
      py::arg("corpus_dir"), py::arg("count"), py::arg("seed") = 0, py::arg("max_inputs") = 5,
      py::arg("max_outputs") = 5, py::arg("oracle_timeout") = 5.0,
      "Mines patterns from a directory of specs and returns labelled samples as JSON lines.");
}
