#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qclab/core/error.hpp"
#include "qclab/harness/emit.hpp"
#include "qclab/harness/output.hpp"
#include "qclab/harness/suite.hpp"

namespace {

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::string out;
  std::string format;
  std::string plot;
  std::optional<int> max_qubits;
  std::vector<std::string> params;
};

qclab::Json parse_value(const std::string& text) {
  try {
    return qclab::Json::parse(text);
  } catch (const qclab::Json::exception&) {
    return text;
  }
}

qclab::ExperimentConfig build_config(const std::string& experiment, const RunArgs& a) {
  qclab::Json j;
  if (!a.config.empty()) {
    j = qclab::load_config(a.config).to_json();
    if (j.at("experiment") != experiment) {
      throw qclab::ConfigError("config is for '" + j.at("experiment").get<std::string>() +
                               "' but the subcommand is '" + experiment + "'");
    }
  } else {
    j = {{"schema_version", qclab::kSchemaVersion}, {"experiment", experiment}};
  }
  if (a.seed) j["seed"] = *a.seed;
  if (a.trials) j["trials"] = *a.trials;
  if (!a.out.empty()) j["output"] = a.out;
  if (!a.format.empty()) j["format"] = a.format;
  if (!a.plot.empty()) j["plot"] = a.plot;
  if (a.max_qubits) j["max_qubits"] = *a.max_qubits;
  if (!a.params.empty() && !j.contains("params")) j["params"] = qclab::Json::object();
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw qclab::ConfigError("--param expects key=value, got '" + kv + "'");
    j["params"][kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
  }
  return qclab::parse_config(j);
}

void print_check_table(const qclab::ExperimentReport& r) {
  std::size_t width = 4;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  std::printf("%-*s  %14s  %14s  %12s  %s\n", static_cast<int>(width), "check", "lhs", "rhs", "margin", "pass");
  for (const auto& c : r.checks) {
    std::printf("%-*s  %14.8g  %14.8g  %12.4g  %s\n", static_cast<int>(width), c.name.c_str(), c.lhs, c.rhs,
                c.margin, c.holds ? "yes" : "NO");
  }
  std::printf("%s: %s (%.2fs)\n", r.config.experiment.c_str(), r.pass ? "PASS" : "FAIL", r.wall_time);
}

int run_one(const std::string& experiment, const RunArgs& a) {
  const auto config = build_config(experiment, a);
  const auto report = qclab::run_experiment(config);
  qclab::write_outputs(report);
  if (config.output.empty()) {
    std::cout << qclab::dump_json(report.to_json());
  } else {
    print_check_table(report);
  }
  return qclab::exit_code_for(report);
}

int run_suite_cmd(const std::string& out, std::uint64_t seed) {
  const auto suite = qclab::run_suite(seed, [](const qclab::CriterionResult& c) {
    std::cout << c.summary_line() << std::endl;
  });
  if (!out.empty()) qclab::write_suite(suite, out);
  std::cout << (suite.all_pass ? "all criteria pass" : "some criteria FAILED") << std::endl;
  return suite.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qclab: simulate quantum cryptographic primitives and their attacks"};
  app.require_subcommand(1);

  std::map<std::string, RunArgs> args;
  for (const auto& name : qclab::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    auto& a = args[name];
    sub->add_option("--config", a.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", a.seed, "master seed (required without --config)");
    sub->add_option("--trials", a.trials, "trial count override");
    sub->add_option("--out", a.out, "report path; without it the JSON report goes to stdout");
    sub->add_option("--format", a.format, "json, csv or both");
    sub->add_option("--plot", a.plot, "SVG path for the sweep plot");
    sub->add_option("--max-qubits", a.max_qubits, "qubit cap for this run");
    sub->add_option("--param", a.params, "parameter override key=value (value parsed as JSON)");
  }

  auto* suite = app.add_subcommand("suite", "acceptance battery");
  suite->require_subcommand(1);
  auto* suite_run = suite->add_subcommand("run", "run every acceptance criterion");
  std::string suite_out;
  std::uint64_t suite_seed = 42;
  suite_run->add_option("--out", suite_out, "directory for criterion_XX.json and summary.json");
  suite_run->add_option("--seed", suite_seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (suite_run->parsed()) return run_suite_cmd(suite_out, suite_seed);
    for (auto* sub : app.get_subcommands()) {
      if (sub->get_name() != "suite") return run_one(sub->get_name(), args.at(sub->get_name()));
    }
  } catch (const std::exception& e) {
    std::cerr << "qclab: " << e.what() << std::endl;
    return qclab::exit_code_for_exception(e);
  }
  return 1;
}
