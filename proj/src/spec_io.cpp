#include "neurosynt/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace neurosynt {

using nlohmann::json;

namespace {

std::vector<std::string> names(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ltl::SpecError(std::string("'") + key + "' must be an array");
  for (const auto& v : arr) {
    if (!v.is_string()) throw ltl::SpecError(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

ltl::Formula formula(const json& v, const char* key, std::size_t index) {
  std::string text;
  ltl::Notation notation = ltl::Notation::Infix;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_object() && v.contains("formula") && v.at("formula").is_string()) {
    text = v.at("formula").get<std::string>();
    if (v.contains("notation")) {
      const auto n = v.at("notation").get<std::string>();
      if (n == "prefix") notation = ltl::Notation::Prefix;
      else if (n != "infix" && !n.empty()) throw ltl::SpecError("unknown notation '" + n + "'");
    }
  } else {
    throw ltl::SpecError(std::string(key) + "[" + std::to_string(index) + "] must be a formula string");
  }
  try {
    return ltl::parse(text, notation);
  } catch (const ltl::ParseError& e) {
    throw ltl::ParseError(e.kind(), e.offset(),
                          std::string(key) + "[" + std::to_string(index) + "]: " + e.what());
  }
}

std::vector<ltl::Formula> formulas(const json& j, const char* key) {
  std::vector<ltl::Formula> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ltl::SpecError(std::string("'") + key + "' must be an array");
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(formula(arr[k], key, k));
  return out;
}

}  // namespace

ltl::DecompSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ltl::SpecError("specification must be a JSON object");
  ltl::DecompSpec spec;
  if (j.contains("semantics")) spec.semantics = ltl::parse_semantics(j.at("semantics").get<std::string>());
  spec.inputs = names(j, "inputs");
  spec.outputs = names(j, "outputs");
  spec.assumptions = formulas(j, "assumptions");
  spec.guarantees = formulas(j, "guarantees");
  spec.validate();
  return spec;
}

ltl::DecompSpec parse_spec_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ltl::SpecError("malformed JSON at offset " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const json::exception& e) {
    throw ltl::SpecError(std::string("bad specification: ") + e.what());
  }
}

ltl::DecompSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ltl::SpecError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

json spec_to_json(const ltl::DecompSpec& spec) {
  json j;
  j["semantics"] = std::string(ltl::to_string(spec.semantics));
  j["inputs"] = spec.inputs;
  j["outputs"] = spec.outputs;
  j["assumptions"] = json::array();
  for (const auto& f : spec.assumptions) j["assumptions"].push_back(ltl::to_string(f));
  j["guarantees"] = json::array();
  for (const auto& f : spec.guarantees) j["guarantees"].push_back(ltl::to_string(f));
  return j;
}

std::string spec_to_json_text(const ltl::DecompSpec& spec) { return spec_to_json(spec).dump(2); }

}  // namespace neurosynt
