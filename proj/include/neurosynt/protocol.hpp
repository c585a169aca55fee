#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "neurosynt/ltl.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/solution.hpp"

namespace neurosynt::wire {

using Parameters = std::map<std::string, std::string>;

struct SetupRequest {
  Parameters parameters;
  friend bool operator==(const SetupRequest&, const SetupRequest&) = default;
};

struct SetupResponse {
  bool success = false;
  std::optional<std::string> error;
  friend bool operator==(const SetupResponse&, const SetupResponse&) = default;
};

struct SynProblem {
  Parameters parameters;
  ltl::DecompSpec decomp_specification;
  friend bool operator==(const SynProblem&, const SynProblem&) = default;
};

/// Answer of an unsound (neural) solver. The embedded circuit is unverified
/// unless `model_checking_solution` says satisfied, and even then the
/// orchestrator re-checks it.
struct UnsoundSynSolution {
  SynSolution synthesis_solution;
  std::optional<mc::McSolution> model_checking_solution;
  std::string tool;
  std::optional<Seconds> time;
  friend bool operator==(const UnsoundSynSolution&, const UnsoundSynSolution&) = default;
};

struct McProblem {
  Parameters parameters;
  ltl::DecompSpec decomp_specification;
  std::string circuit;
  bool realizable = true;
  friend bool operator==(const McProblem&, const McProblem&) = default;
};

/// Raised when a message body does not match its schema.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

nlohmann::json to_json(const SetupRequest& m);
nlohmann::json to_json(const SetupResponse& m);
nlohmann::json to_json(const SynProblem& m);
nlohmann::json to_json(const SynSolution& m);
nlohmann::json to_json(const UnsoundSynSolution& m);
nlohmann::json to_json(const McProblem& m);
nlohmann::json to_json(const mc::McSolution& m);
/// Formulas as `{"formula": <infix>, "notation": "infix"}` objects.
nlohmann::json spec_to_wire(const ltl::DecompSpec& spec);

/// Decodes one message type. Unknown fields are ignored; missing optional
/// fields take their defaults. Throws DecodeError.
template <class T>
T from_json(const nlohmann::json& j);
template <> SetupRequest from_json<SetupRequest>(const nlohmann::json& j);
template <> SetupResponse from_json<SetupResponse>(const nlohmann::json& j);
template <> SynProblem from_json<SynProblem>(const nlohmann::json& j);
template <> SynSolution from_json<SynSolution>(const nlohmann::json& j);
template <> UnsoundSynSolution from_json<UnsoundSynSolution>(const nlohmann::json& j);
template <> McProblem from_json<McProblem>(const nlohmann::json& j);
template <> mc::McSolution from_json<mc::McSolution>(const nlohmann::json& j);

template <class T>
std::string encode(const T& msg) {
  return to_json(msg).dump();
}

template <class T>
T decode(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError("<body>", std::string("malformed JSON: ") + e.what());
  }
  return from_json<T>(j);
}

}  // namespace neurosynt::wire
