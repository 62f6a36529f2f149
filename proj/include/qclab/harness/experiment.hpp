#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qclab/bounds/bounds.hpp"
#include "qclab/harness/config.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

struct SweepSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Data for an advantage-vs-parameter plot.
struct Sweep {
  std::string x_label;
  std::string y_label;
  std::vector<SweepSeries> series;
  std::string reference_label;
  std::vector<std::pair<double, double>> reference;

  std::size_t point_count() const;
  Json to_json() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  /// One flat object per trial (or per checked instance).
  std::vector<Json> records;
  /// Game reports without their logs (the logs are in `records`).
  Json games = Json::array();
  /// pass is the conjunction of these.
  std::vector<BoundCheck> checks;
  /// Headline numbers for summaries.
  double estimate = 0.0;
  double bound = 0.0;
  std::string bound_source;
  Json details = Json::object();
  std::optional<Sweep> sweep;
  double wall_time = 0.0;
  bool pass = false;

  Json to_json(bool include_records = true) const;
};

/// Runs the configured experiment under the configured qubit cap.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// 0 pass, 1 fail; exceptions map through exit_code_for_exception.
int exit_code_for(const ExperimentReport& report);
/// 2 for configuration problems, 3 for CapExceeded, 4 for IoError, 1 otherwise.
int exit_code_for_exception(const std::exception& e);

/// The report serialised with wall_time removed, for replay comparisons.
std::string replay_fingerprint(const Json& report);

}  // namespace qclab
