#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qclab/primitives/report.hpp"

namespace qclab {

inline constexpr int kSchemaVersion = 1;

const std::vector<std::string>& experiment_names();

/// Parameter defaults for an experiment; the key set is the whitelist.
Json default_params(const std::string& experiment);
std::int64_t default_trials(const std::string& experiment);

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string experiment;
  /// Defaults merged with the user's values.
  Json params = Json::object();
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::optional<std::string> plot;
  std::optional<int> max_qubits;

  Json to_json() const;
};

/// Validates and fills defaults. Throws ConfigError on unknown keys, a
/// missing seed, an unknown experiment or schema version, or a bad type.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qclab
