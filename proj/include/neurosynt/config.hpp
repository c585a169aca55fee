#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "neurosynt/protocol.hpp"

namespace neurosynt::orch {

enum class Mode { FastestWins, WaitAll };

std::string_view to_string(Mode m);
/// Accepts "fastest" / "fastest_wins" and "all" / "wait_all".
Mode parse_mode(std::string_view s);

/// One configured tool. Argument maps keep scalar values as text, matching
/// the wire `parameters` map.
struct ServiceConfig {
  std::string tool;
  wire::Parameters tool_args;
  wire::Parameters service_args;
  wire::Parameters tool_setup_args;

  /// `service_args.url` when the tool runs behind the wire protocol.
  std::optional<std::string> url() const;

  friend bool operator==(const ServiceConfig&, const ServiceConfig&) = default;
};

struct PortfolioConfig {
  std::optional<ServiceConfig> symbolic_solver;
  std::optional<ServiceConfig> model_checker;
  std::optional<ServiceConfig> neural_solver;
  Mode mode = Mode::FastestWins;
  /// Model check symbolic answers too; off by default.
  bool verify_symbolic = false;

  friend bool operator==(const PortfolioConfig&, const PortfolioConfig&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { MissingSection, BadType, Syntax };
  ConfigError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sections `symbolic_solver`, `model_checker`, `neural_solver`, each with
/// `tool` and optional `tool_args` / `service_args` / `tool_setup_args`
/// maps, plus optional top-level `mode` and `verify_symbolic`. At least one
/// solver section is required. `warnings` receives notes on ignored keys.
PortfolioConfig parse_config(std::string_view yaml, std::vector<std::string>* warnings = nullptr);
PortfolioConfig load_config(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
std::string dump_config(const PortfolioConfig& cfg);

}  // namespace neurosynt::orch
