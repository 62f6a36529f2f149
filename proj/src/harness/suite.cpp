#include "qclab/harness/suite.hpp"

#include <algorithm>
#include <cstdio>

#include "qclab/core/error.hpp"
#include "qclab/harness/emit.hpp"

namespace qclab {

namespace {

ExperimentConfig make_config(const std::string& experiment, std::uint64_t seed, Json params = Json::object(),
                             std::optional<std::int64_t> trials = std::nullopt) {
  Json j = {{"schema_version", kSchemaVersion}, {"experiment", experiment}, {"seed", seed}, {"params", params}};
  if (trials) j["trials"] = *trials;
  return parse_config(j);
}

}  // namespace

const std::string& criterion_name(int id) {
  static const std::vector<std::string> names = {
      "trivial adversary win >= 2^-m",
      "welch sweep",
      "fingerprint overlaps <= delta^r <= eta",
      "phase-state overlaps",
      "EFI from PRG: F <= 2^-n, TD >= 1 - 2^-n/2",
      "EFI spectral distinguisher",
      "tomography failure rate",
      "net attack on a one-qubit scheme",
      "Haar tail concentration",
      "inequality suites",
      "commitments: correctness, binding, conversion, swap attack",
      "reproducibility modulo wall_time",
  };
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("criterion id out of range");
  return names[static_cast<std::size_t>(id - 1)];
}

std::vector<ExperimentConfig> criterion_configs(int id, std::uint64_t seed) {
  switch (id) {
    case 1:
      return {make_config("owsg-trivial", seed, {{"n", {3, 4, 6}}, {"m", {1, 2, 3}}, {"scoring", "both"}}, 10000)};
    case 2:
      return {make_config("welch", seed, {{"k", 1}}, 100)};
    case 3:
      return {make_config("fingerprint", seed, {{"ell", 8}, {"eta", 0.5}})};
    case 4:
      return {make_config("phase-owsg", seed, {{"ell", 8}, {"lambda", 16}})};
    case 5:
      return {make_config("efi-build", seed, {{"n", {2, 3, 4}}})};
    case 6:
      return {make_config("efi-attack", seed, {{"n", 3}, {"modes", {"adversarial", "exact"}}}, 2000)};
    case 7:
      return {make_config("tomography-bench", seed,
                          {{"qubits", 1}, {"delta", 0.1}, {"beta", 0.05}, {"lambda", 16.0}}, 200)};
    case 8:
      return {make_config("owsg-net", seed,
                          {{"n", 3}, {"m", 1}, {"delta", 0.2}, {"tomography", "oracle"}}, 500)};
    case 9:
      return {make_config("bounds-suite", seed,
                          {{"suites", {"haar"}},
                           {"haar_m", {1, 2}},
                           {"haar_h", {0.1, 0.5}},
                           {"haar_samples", 100000}})};
    case 10:
      return {make_config("bounds-suite", seed, {{"qubits", 2}, {"suites", {"trf", "projector", "fidelity_mix"}}},
                          1000)};
    case 11:
      return {make_config("commit-build", seed, {{"n", 2}}),
              make_config("commit-convert", seed, {{"n", 2}}),
              make_config("commit-attack", seed, {{"n", 2}, {"convert", true}}, 10000)};
    default:
      throw InvalidArgument("criterion " + std::to_string(id) + " has no experiment configs");
  }
}

Json CriterionResult::to_json() const {
  Json reps = Json::array();
  for (const auto& r : reports) reps.push_back(r.to_json());
  return {{"id", id},           {"name", name},       {"pass", pass},   {"estimate", estimate},
          {"bound", bound},     {"details", details}, {"reports", reps}};
}

std::string CriterionResult::summary_line() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%02d", id);
  return std::string(pass ? "[PASS] " : "[FAIL] ") + buf + " " + name +
         "  estimate=" + format_double(estimate) + " bound=" + format_double(bound);
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult c;
  c.id = id;
  c.name = criterion_name(id);
  for (const auto& cfg : criterion_configs(id, seed)) c.reports.push_back(run_experiment(cfg));
  c.pass = std::all_of(c.reports.begin(), c.reports.end(), [](const ExperimentReport& r) { return r.pass; });
  // Headline numbers come from the last experiment (the attack, for criterion 11).
  c.estimate = c.reports.back().estimate;
  c.bound = c.reports.back().bound;
  return c;
}

CriterionResult run_reproducibility(const std::vector<CriterionResult>& first, std::uint64_t seed) {
  CriterionResult c;
  c.id = 12;
  c.name = criterion_name(12);
  Json compared = Json::array();
  int matches = 0;
  for (const auto& prev : first) {
    if (prev.id < 1 || prev.id > 11) continue;
    const auto again = run_criterion(prev.id, seed);
    const bool same = replay_fingerprint(prev.to_json()) == replay_fingerprint(again.to_json());
    matches += same ? 1 : 0;
    compared.push_back({{"id", prev.id}, {"identical", same}});
  }
  c.details = {{"compared", compared}};
  c.estimate = matches;
  c.bound = static_cast<double>(compared.size());
  c.pass = !compared.empty() && matches == static_cast<int>(compared.size());
  return c;
}

Json SuiteResult::summary_json() const {
  Json list = Json::array();
  for (const auto& c : criteria) {
    list.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"estimate", c.estimate}, {"bound", c.bound}});
  }
  return {{"schema_version", kSchemaVersion}, {"seed", seed}, {"criteria", list}, {"all_pass", all_pass}};
}

SuiteResult run_suite(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress) {
  SuiteResult s;
  s.seed = seed;
  for (int id = 1; id <= 11; ++id) {
    s.criteria.push_back(run_criterion(id, seed));
    if (progress) progress(s.criteria.back());
  }
  s.criteria.push_back(run_reproducibility(s.criteria, seed));
  if (progress) progress(s.criteria.back());
  s.all_pass = std::all_of(s.criteria.begin(), s.criteria.end(), [](const CriterionResult& c) { return c.pass; });
  return s;
}

void write_suite(const SuiteResult& suite, const std::filesystem::path& dir) {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (const auto& c : suite.criteria) {
    char name[32];
    std::snprintf(name, sizeof name, "criterion_%02d.json", c.id);
    files.emplace_back(dir / name, dump_json(c.to_json()));
  }
  files.emplace_back(dir / "summary.json", dump_json(suite.summary_json()));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [path, text] : files) write_atomic(path, text);
}

}  // namespace qclab
