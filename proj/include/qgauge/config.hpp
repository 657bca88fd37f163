#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <qgauge/domains.hpp>
#include <qgauge/verify.hpp>

namespace qgauge {

/// Domain description as read from a JSON config file. Exactly one of
/// defining_function / builtin selects the ψ source.
struct DomainConfig {
  std::string name;
  int dimension = 0;
  std::vector<int> weights;
  std::optional<std::string> defining_function;
  std::optional<std::string> builtin_family;
  nlohmann::json builtin_params;  // object, may be empty
  std::optional<double> bounding_radius;  // required with defining_function
  SolverOptions solver;
  Thresholds thresholds;
  std::uint64_t seed = 42;
};

/// Parses and validates a config object. ConfigError messages carry the
/// offending field path.
DomainConfig parse_config(const nlohmann::json& j);

/// Builds the DomainDefinition the config describes (parses and compiles the
/// expression, or resolves the builtin family).
DomainDefinition realize(const DomainConfig& cfg);

/// Reads a config file from disk: IoError on filesystem problems,
/// ConfigError on malformed content.
std::pair<DomainConfig, DomainDefinition> load_config(
    const std::filesystem::path& path);

/// Config echo used inside reports; reproduces effective defaults.
nlohmann::json config_to_json(const DomainConfig& cfg);

nlohmann::json thresholds_to_json(const Thresholds& thr);

}  // namespace qgauge
