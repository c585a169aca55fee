#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "neurosynt/ltl.hpp"

namespace neurosynt {

/// Assume-guarantee input file: `{"semantics", "inputs", "outputs", "assumptions", "guarantees"}`.
/// Formulas are infix strings; `{"formula", "notation"}` objects are accepted too.
/// `semantics` is optional and defaults to mealy. Throws ltl::SpecError (JSON
/// syntax errors carry the byte offset) or ltl::ParseError.
ltl::DecompSpec parse_spec_json(std::string_view text);
ltl::DecompSpec load_spec_file(const std::filesystem::path& path);

ltl::DecompSpec spec_from_json(const nlohmann::json& j);

/// Input-file shape with infix formula strings.
nlohmann::json spec_to_json(const ltl::DecompSpec& spec);
std::string spec_to_json_text(const ltl::DecompSpec& spec);

}  // namespace neurosynt
