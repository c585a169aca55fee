#include "neurosynt/protocol.hpp"

#include "neurosynt/spec_io.hpp"

namespace neurosynt::wire {

using nlohmann::json;

namespace {

const json* field(const json& j, const char* name) {
  if (!j.is_object()) throw DecodeError("<body>", "expected a JSON object");
  auto it = j.find(name);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& required(const json& j, const char* name) {
  const json* v = field(j, name);
  if (!v) throw DecodeError(name, "missing");
  return *v;
}

std::string as_string(const json& v, const std::string& name) {
  if (!v.is_string()) throw DecodeError(name, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& name) {
  if (!v.is_boolean()) throw DecodeError(name, "expected a boolean");
  return v.get<bool>();
}

Seconds as_seconds(const json& v, const std::string& name) {
  if (!v.is_number()) throw DecodeError(name, "expected seconds as a number");
  return Seconds(v.get<double>());
}

std::optional<Seconds> optional_time(const json& j) {
  const json* v = field(j, "time");
  if (!v) return std::nullopt;
  return as_seconds(*v, "time");
}

Parameters parameters(const json& j) {
  Parameters out;
  const json* v = field(j, "parameters");
  if (!v) return out;
  if (!v->is_object()) throw DecodeError("parameters", "expected an object");
  for (const auto& [k, val] : v->items()) {
    if (val.is_string()) out[k] = val.get<std::string>();
    else if (val.is_primitive() && !val.is_null()) out[k] = val.dump();
    else throw DecodeError("parameters." + k, "expected a string");
  }
  return out;
}

ltl::DecompSpec specification(const json& j) {
  const json& v = required(j, "decomp_specification");
  try {
    return spec_from_json(v);
  } catch (const ltl::ParseError& e) {
    throw DecodeError("decomp_specification", e.what());
  } catch (const ltl::SpecError& e) {
    throw DecodeError("decomp_specification", e.what());
  } catch (const json::exception& e) {
    throw DecodeError("decomp_specification", e.what());
  }
}

json trace_part(const std::vector<ltl::Assignment>& steps) {
  json arr = json::array();
  for (const auto& a : steps) arr.push_back(json(std::vector<std::string>(a.begin(), a.end())));
  return arr;
}

std::vector<ltl::Assignment> trace_part(const json& v, const std::string& name) {
  if (!v.is_array()) throw DecodeError(name, "expected an array of steps");
  std::vector<ltl::Assignment> out;
  for (const auto& step : v) {
    if (!step.is_array()) throw DecodeError(name, "expected each step to be an array of atoms");
    ltl::Assignment a;
    for (const auto& atom : step) a.insert(as_string(atom, name));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

json spec_to_wire(const ltl::DecompSpec& spec) {
  auto formulas = [](const std::vector<ltl::Formula>& fs) {
    json arr = json::array();
    for (const auto& f : fs) arr.push_back({{"formula", ltl::to_string(f)}, {"notation", "infix"}});
    return arr;
  };
  return {{"inputs", spec.inputs},
          {"outputs", spec.outputs},
          {"assumptions", formulas(spec.assumptions)},
          {"guarantees", formulas(spec.guarantees)},
          {"semantics", std::string(ltl::to_string(spec.semantics))}};
}

json to_json(const SetupRequest& m) { return {{"parameters", m.parameters}}; }

json to_json(const SetupResponse& m) {
  json j = {{"success", m.success}};
  if (m.error) j["error"] = *m.error;
  return j;
}

json to_json(const SynProblem& m) {
  return {{"parameters", m.parameters}, {"decomp_specification", spec_to_wire(m.decomp_specification)}};
}

json to_json(const SynSolution& m) {
  json j = {{"status", std::string(to_string(m.status))}, {"detailed_status", m.detailed_status}, {"tool", m.tool}};
  if (m.circuit) j["circuit"] = *m.circuit;
  if (m.realizable) j["realizable"] = *m.realizable;
  if (m.time) j["time"] = m.time->count();
  return j;
}

json to_json(const mc::McSolution& m) {
  json j = {{"status", std::string(mc::to_string(m.status))}, {"detailed_status", m.detail}, {"time", m.time.count()}};
  if (m.counterexample)
    j["counterexample"] = {{"prefix", trace_part(m.counterexample->prefix)},
                           {"cycle", trace_part(m.counterexample->cycle)}};
  return j;
}

json to_json(const UnsoundSynSolution& m) {
  json j = {{"synthesis_solution", to_json(m.synthesis_solution)}, {"tool", m.tool}};
  if (m.model_checking_solution) j["model_checking_solution"] = to_json(*m.model_checking_solution);
  if (m.time) j["time"] = m.time->count();
  return j;
}

json to_json(const McProblem& m) {
  return {{"parameters", m.parameters},
          {"decomp_specification", spec_to_wire(m.decomp_specification)},
          {"circuit", m.circuit},
          {"realizable", m.realizable}};
}

template <>
SetupRequest from_json<SetupRequest>(const json& j) {
  return {parameters(j)};
}

template <>
SetupResponse from_json<SetupResponse>(const json& j) {
  SetupResponse m;
  m.success = as_bool(required(j, "success"), "success");
  if (const json* e = field(j, "error")) m.error = as_string(*e, "error");
  return m;
}

template <>
SynProblem from_json<SynProblem>(const json& j) {
  SynProblem m;
  m.parameters = parameters(j);
  m.decomp_specification = specification(j);
  return m;
}

template <>
SynSolution from_json<SynSolution>(const json& j) {
  SynSolution m;
  try {
    m.status = parse_syn_status(as_string(required(j, "status"), "status"));
  } catch (const std::invalid_argument& e) {
    throw DecodeError("status", e.what());
  }
  if (const json* v = field(j, "circuit")) m.circuit = as_string(*v, "circuit");
  if (const json* v = field(j, "realizable")) m.realizable = as_bool(*v, "realizable");
  if (m.circuit && !m.realizable) throw DecodeError("realizable", "required when a circuit is present");
  if (const json* v = field(j, "detailed_status")) m.detailed_status = as_string(*v, "detailed_status");
  if (const json* v = field(j, "tool")) m.tool = as_string(*v, "tool");
  m.time = optional_time(j);
  return m;
}

template <>
mc::McSolution from_json<mc::McSolution>(const json& j) {
  mc::McSolution m;
  try {
    m.status = mc::parse_mc_status(as_string(required(j, "status"), "status"));
  } catch (const std::invalid_argument& e) {
    throw DecodeError("status", e.what());
  }
  if (const json* v = field(j, "detailed_status")) m.detail = as_string(*v, "detailed_status");
  if (auto t = optional_time(j)) m.time = *t;
  if (const json* v = field(j, "counterexample")) {
    if (!v->is_object()) throw DecodeError("counterexample", "expected an object");
    ltl::LassoTrace t;
    if (const json* p = field(*v, "prefix")) t.prefix = trace_part(*p, "counterexample.prefix");
    t.cycle = trace_part(required(*v, "cycle"), "counterexample.cycle");
    m.counterexample = std::move(t);
  }
  return m;
}

template <>
UnsoundSynSolution from_json<UnsoundSynSolution>(const json& j) {
  UnsoundSynSolution m;
  try {
    m.synthesis_solution = from_json<SynSolution>(required(j, "synthesis_solution"));
  } catch (const DecodeError& e) {
    if (e.field() == "synthesis_solution") throw;
    throw DecodeError("synthesis_solution." + e.field(), e.what());
  }
  if (const json* v = field(j, "model_checking_solution")) {
    try {
      m.model_checking_solution = from_json<mc::McSolution>(*v);
    } catch (const DecodeError& e) {
      throw DecodeError("model_checking_solution." + e.field(), e.what());
    }
  }
  if (const json* v = field(j, "tool")) m.tool = as_string(*v, "tool");
  m.time = optional_time(j);
  return m;
}

template <>
McProblem from_json<McProblem>(const json& j) {
  McProblem m;
  m.parameters = parameters(j);
  m.decomp_specification = specification(j);
  m.circuit = as_string(required(j, "circuit"), "circuit");
  if (const json* v = field(j, "realizable")) m.realizable = as_bool(*v, "realizable");
  return m;
}

}  // namespace neurosynt::wire
