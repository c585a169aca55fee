#include "neurosynt/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace neurosynt::orch {

std::string_view to_string(Mode m) { return m == Mode::FastestWins ? "fastest" : "all"; }

Mode parse_mode(std::string_view s) {
  if (s == "fastest" || s == "fastest_wins" || s == "FastestWins") return Mode::FastestWins;
  if (s == "all" || s == "wait_all" || s == "WaitAll") return Mode::WaitAll;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected fastest or all)");
}

std::optional<std::string> ServiceConfig::url() const {
  auto it = service_args.find("url");
  if (it == service_args.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

namespace {

// Keys that only mattered for container management in the original setup.
const std::set<std::string> kIgnoredServiceArgs = {"start_containerized_service", "start_service", "mem_limit",
                                                   "nvidia_gpus"};

wire::Parameters scalar_map(const YAML::Node& node, const std::string& where) {
  wire::Parameters out;
  if (!node || node.IsNull()) return out;
  if (!node.IsMap()) throw ConfigError(ConfigError::Kind::BadType, where + " must be a map");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!kv.second.IsScalar() && !kv.second.IsNull())
      throw ConfigError(ConfigError::Kind::BadType, where + "." + key + " must be a scalar");
    out[key] = kv.second.IsNull() ? "" : kv.second.Scalar();
  }
  return out;
}

std::optional<ServiceConfig> section(const YAML::Node& root, const char* name, std::vector<std::string>* warnings) {
  const YAML::Node node = root[name];
  if (!node || node.IsNull()) return std::nullopt;
  if (!node.IsMap()) throw ConfigError(ConfigError::Kind::BadType, std::string(name) + " must be a map");
  const YAML::Node tool = node["tool"];
  if (!tool) throw ConfigError(ConfigError::Kind::MissingSection, std::string(name) + ".tool is missing");
  if (!tool.IsScalar()) throw ConfigError(ConfigError::Kind::BadType, std::string(name) + ".tool must be a string");
  ServiceConfig s;
  s.tool = tool.Scalar();
  s.tool_args = scalar_map(node["tool_args"], std::string(name) + ".tool_args");
  s.service_args = scalar_map(node["service_args"], std::string(name) + ".service_args");
  s.tool_setup_args = scalar_map(node["tool_setup_args"], std::string(name) + ".tool_setup_args");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key != "tool" && key != "tool_args" && key != "service_args" && key != "tool_setup_args" && warnings)
      warnings->push_back(std::string(name) + "." + key + " is not a known key and was ignored");
  }
  if (warnings)
    for (const auto& [k, v] : s.service_args)
      if (kIgnoredServiceArgs.count(k))
        warnings->push_back(std::string(name) + ".service_args." + k + " concerns container management; ignored");
  return s;
}

bool as_bool(const YAML::Node& n, const char* key) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError(ConfigError::Kind::BadType, std::string(key) + " must be a boolean");
  }
}

}  // namespace

PortfolioConfig parse_config(std::string_view yaml, std::vector<std::string>* warnings) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(ConfigError::Kind::Syntax, e.what());
  }
  if (!root.IsMap()) throw ConfigError(ConfigError::Kind::BadType, "configuration must be a map");
  PortfolioConfig cfg;
  cfg.symbolic_solver = section(root, "symbolic_solver", warnings);
  cfg.model_checker = section(root, "model_checker", warnings);
  cfg.neural_solver = section(root, "neural_solver", warnings);
  if (!cfg.symbolic_solver && !cfg.neural_solver)
    throw ConfigError(ConfigError::Kind::MissingSection, "no symbolic_solver or neural_solver section");
  if (const YAML::Node m = root["mode"]) {
    if (!m.IsScalar()) throw ConfigError(ConfigError::Kind::BadType, "mode must be a string");
    try {
      cfg.mode = parse_mode(m.Scalar());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(ConfigError::Kind::BadType, e.what());
    }
  }
  if (const YAML::Node v = root["verify_symbolic"]) cfg.verify_symbolic = as_bool(v, "verify_symbolic");
  return cfg;
}

PortfolioConfig load_config(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigError::Kind::MissingSection, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), warnings);
}

std::string dump_config(const PortfolioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  auto emit = [&](const char* name, const std::optional<ServiceConfig>& s) {
    if (!s) return;
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "tool" << YAML::Value << s->tool;
    auto args = [&](const char* key, const wire::Parameters& p) {
      if (p.empty()) return;
      out << YAML::Key << key << YAML::Value << YAML::BeginMap;
      for (const auto& [k, v] : p) out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
      out << YAML::EndMap;
    };
    args("tool_args", s->tool_args);
    args("service_args", s->service_args);
    args("tool_setup_args", s->tool_setup_args);
    out << YAML::EndMap;
  };
  emit("symbolic_solver", cfg.symbolic_solver);
  emit("model_checker", cfg.model_checker);
  emit("neural_solver", cfg.neural_solver);
  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(cfg.mode));
  out << YAML::Key << "verify_symbolic" << YAML::Value << cfg.verify_symbolic;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace neurosynt::orch
