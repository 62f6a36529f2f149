#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qclab/harness/experiment.hpp"

namespace qclab {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double estimate = 0.0;
  double bound = 0.0;
  std::vector<ExperimentReport> reports;
  /// Extra facts for criteria that are not a single experiment.
  Json details = Json::object();

  Json to_json() const;
  /// One line: "[PASS] 03 fingerprint overlaps ... estimate=... bound=...".
  std::string summary_line() const;
};

const std::string& criterion_name(int id);
/// Configs run by criteria 1..11, all seeded with `seed`.
std::vector<ExperimentConfig> criterion_configs(int id, std::uint64_t seed);
/// Criteria 1..11. Criterion 12 needs a previous run to compare with.
CriterionResult run_criterion(int id, std::uint64_t seed);
/// Re-runs 1..11 and compares each against `first` modulo wall_time.
CriterionResult run_reproducibility(const std::vector<CriterionResult>& first, std::uint64_t seed);

struct SuiteResult {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass = false;

  Json summary_json() const;
};

/// Runs all criteria; `progress` (if set) receives each summary line as it completes.
SuiteResult run_suite(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress = {});

/// criterion_XX.json per criterion plus summary.json, written atomically
/// after everything is rendered. The directory is created if missing.
void write_suite(const SuiteResult& suite, const std::filesystem::path& dir);

}  // namespace qclab
