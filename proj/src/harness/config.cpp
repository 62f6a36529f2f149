#include "qclab/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "qclab/core/error.hpp"

namespace qclab {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "welch",         "owsg-trivial",  "owsg-net",       "efi-build",        "efi-attack",
      "fingerprint",   "phase-owsg",    "prsg-owsg",      "commit-build",     "commit-convert",
      "commit-attack", "tomography-bench", "bounds-suite"};
  return names;
}

Json default_params(const std::string& e) {
  if (e == "welch") return {{"k", 1}};
  if (e == "owsg-trivial") return {{"n", 3}, {"m", 1}, {"scoring", "both"}};
  if (e == "owsg-net") {
    return {{"n", 3},
            {"m", 1},
            {"delta", 0.2},
            {"tomography", "oracle"},
            {"perturbation", 0.0},
            {"failure_budget", 1e-6},
            {"max_iterations", 0},
            {"beta", 0.01},
            {"lambda", 16.0},
            {"audit_samples", 1000}};
  }
  if (e == "efi-build") return {{"n", Json::array({2, 3, 4})}, {"prg_kind", "random_injection"}};
  if (e == "efi-attack") {
    return {{"n", 3},
            {"modes", Json::array({"adversarial", "exact"})},
            {"p", 0.0},
            {"cached", false},
            {"scoring", "sampled"}};
  }
  if (e == "fingerprint") {
    return {{"ell", 8}, {"eta", 0.5}, {"owf_kind", "random_injection"}, {"code_length", 0},
            {"max_tries", 20000}};
  }
  if (e == "phase-owsg") return {{"ell", 8}, {"lambda", 16}, {"owf_kind", "random_injection"}};
  if (e == "prsg-owsg") return {{"n", 4}, {"m", 2}, {"h", 0.25}, {"tail_samples", 10000}};
  if (e == "commit-build") return {{"n", 2}};
  if (e == "commit-convert") return {{"n", 2}};
  if (e == "commit-attack") return {{"n", 2}, {"convert", true}};
  if (e == "tomography-bench") {
    return {{"qubits", 1}, {"delta", 0.1}, {"beta", 0.05}, {"lambda", 16.0}, {"state", "random"}};
  }
  if (e == "bounds-suite") {
    return {{"qubits", 2},
            {"suites", Json::array({"haar", "trf", "projector", "fidelity_mix"})},
            {"haar_samples", 100000},
            {"haar_m", Json::array({1, 2})},
            {"haar_h", Json::array({0.1, 0.5})}};
  }
  throw ConfigError("unknown experiment '" + e + "'");
}

std::int64_t default_trials(const std::string& e) {
  if (e == "welch") return 100;
  if (e == "owsg-trivial") return 10000;
  if (e == "owsg-net") return 500;
  if (e == "efi-attack") return 2000;
  if (e == "commit-attack") return 10000;
  if (e == "tomography-bench") return 200;
  if (e == "bounds-suite") return 1000;
  if (e == "prsg-owsg") return 1000;
  return 1;
}

Json ExperimentConfig::to_json() const {
  Json j = {{"schema_version", schema_version},
            {"experiment", experiment},
            {"params", params},
            {"trials", trials},
            {"seed", seed},
            {"format", format}};
  if (!output.empty()) j["output"] = output;
  if (plot) j["plot"] = *plot;
  if (max_qubits) j["max_qubits"] = *max_qubits;
  return j;
}

namespace {

// Scalars and lists are interchangeable (a list turns a scalar into a sweep).
bool compatible(const Json& def, const Json& value) {
  if (def.is_array() || value.is_array()) return value.is_array() || value.is_primitive();
  if (def.is_number()) return value.is_number();
  return def.type() == value.type();
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed = {"schema_version", "experiment", "params",
                                                "trials",         "seed",       "output",
                                                "format",         "plot",       "max_qubits"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
  }
  ExperimentConfig c;
  try {
    c.schema_version = j.value("schema_version", kSchemaVersion);
    if (c.schema_version != kSchemaVersion) {
      throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    }
    if (!j.contains("experiment")) throw ConfigError("config needs an 'experiment'");
    c.experiment = j.at("experiment").get<std::string>();
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
      throw ConfigError("unknown experiment '" + c.experiment + "'");
    }
    if (!j.contains("seed")) throw ConfigError("config needs a 'seed'");
    const Json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    c.seed = seed.get<std::uint64_t>();

    c.params = default_params(c.experiment);
    if (j.contains("params")) {
      const Json& p = j.at("params");
      if (!p.is_object()) throw ConfigError("params must be an object");
      for (auto it = p.begin(); it != p.end(); ++it) {
        if (!c.params.contains(it.key())) {
          throw ConfigError("unknown parameter '" + it.key() + "' for " + c.experiment);
        }
        if (!compatible(c.params[it.key()], it.value())) {
          throw ConfigError("parameter '" + it.key() + "' has the wrong type");
        }
        c.params[it.key()] = it.value();
      }
    }
    c.trials = j.value("trials", default_trials(c.experiment));
    if (c.trials < 1) throw ConfigError("trials must be positive");
    c.output = j.value("output", std::string());
    c.format = j.value("format", std::string("json"));
    if (c.format != "json" && c.format != "csv" && c.format != "both") {
      throw ConfigError("format must be json, csv or both");
    }
    if (j.contains("plot")) c.plot = j.at("plot").get<std::string>();
    if (j.contains("max_qubits")) c.max_qubits = j.at("max_qubits").get<int>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace qclab
