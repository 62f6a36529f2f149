#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qclab {

using Json = nlohmann::json;

/// One trial of a security game. `outcome` is the score credited to the
/// adversary: an acceptance probability under exact scoring, 0 or 1 under
/// sampled scoring.
struct TrialRecord {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::string mode;
  double outcome = 0.0;
  std::optional<std::uint64_t> recovered_key;
  std::optional<double> td_to_target;
  bool bot = false;
  std::optional<int> arm;

  Json to_json() const;
};

struct ArmStats {
  std::int64_t trials = 0;
  double ones = 0.0;
  double rate = 0.0;
};

/// Aggregate of a seeded game run.
///
/// For one-wayness games estimate = wins / trials and the interval is the
/// normal approximation 1.96 * sqrt(p(1-p)/trials). Distinguishing games
/// report estimate = |rate_0 - rate_1| with sigma combined over both arms and
/// leave `wins` empty.
struct GameReport {
  std::string game;
  std::string access_mode;
  std::string scoring;
  std::int64_t trials = 0;
  std::optional<double> wins;
  double estimate = 0.0;
  double sigma = 0.0;
  double ci95_halfwidth = 0.0;
  double bound = 0.0;
  std::string bound_source;
  std::string relation = ">=";
  double slack_sigmas = 3.0;
  bool pass = false;
  std::int64_t bot_count = 0;
  std::int64_t failures = 0;
  std::optional<ArmStats> arm0;
  std::optional<ArmStats> arm1;
  std::vector<TrialRecord> log;

  /// Sets the reference bound and evaluates `pass` as
  /// estimate >= bound - k*sigma (relation ">=") or estimate <= bound + k*sigma
  /// (relation "<=").
  void check_against(double reference, const std::string& rel, std::string source,
                     double sigmas = 3.0);

  Json to_json(bool include_log = true) const;
};

}  // namespace qclab
