#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/harness/emit.hpp"
#include "qclab/harness/output.hpp"
#include "qclab/harness/suite.hpp"

using namespace qclab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig cfg(const std::string& experiment, Json params = Json::object(), std::int64_t trials = 0,
                     std::uint64_t seed = 7) {
  Json j = {{"experiment", experiment}, {"seed", seed}, {"params", params}};
  if (trials > 0) j["trials"] = trials;
  return parse_config(j);
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("qclab-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      rows.back().push_back(cell);
      cell.clear();
      rows.emplace_back();
    } else {
      cell += c;
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "nope"}, {"seed", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"params", {{"kk", 1}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"schema_version", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"format", "xml"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"trials", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"experiment", "welch"}, {"seed", 1}, {"params", {{"k", "one"}}}}),
                  ConfigError);

  const auto c = cfg("owsg-net");
  CHECK(c.trials == 500);
  CHECK(c.params.at("delta").get<double>() == doctest::Approx(0.2));
  CHECK(c.schema_version == kSchemaVersion);
  // The echo parses back to the same config.
  CHECK(parse_config(c.to_json()).to_json() == c.to_json());

  for (const auto& e : experiment_names()) {
    CHECK_NOTHROW(parse_config(Json{{"experiment", e}, {"seed", 3}}));
  }
}

TEST_CASE("config files") {
  const auto dir = scratch("config");
  CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
  std::ofstream(dir / "good.json") << R"({"experiment": "efi-build", "seed": 5, "params": {"n": 3}})";
  const auto c = load_config(dir / "good.json");
  CHECK(c.experiment == "efi-build");
  CHECK(c.seed == 5);
}

TEST_CASE("json emitter writes 17 significant digits") {
  const Json j = {{"a", 0.1}, {"b", std::nan("")}, {"c", {1, 2.5}}, {"s", "x\"y"}};
  const auto text = dump_json(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("null") != std::string::npos);
  const auto back = Json::parse(text);
  CHECK(back.at("a").get<double>() == 0.1);
  CHECK(back.at("s") == "x\"y");
  CHECK(back.at("b").is_null());
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("csv and json renderings carry the same trial values") {
  const auto r = run_experiment(cfg("owsg-trivial", {{"n", 3}, {"m", 1}}, 200));
  REQUIRE(r.records.size() == 400);
  const auto rows = parse_csv(render_csv(r.records));
  REQUIRE(rows.size() == r.records.size() + 1);
  const auto& header = rows[0];
  const auto json_rows = Json::parse(dump_json(r.to_json())).at("records");
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    for (std::size_t col = 0; col < header.size(); ++col) {
      const auto& cell = rows[i + 1][col];
      const Json& jv = json_rows[i].contains(header[col]) ? json_rows[i][header[col]] : Json(nullptr);
      if (jv.is_null()) {
        CHECK(cell.empty());
      } else if (jv.is_number_float()) {
        CHECK(std::stod(cell) == jv.get<double>());
      } else if (jv.is_string()) {
        CHECK(cell == jv.get<std::string>());
      } else {
        CHECK(Json::parse(cell) == jv);
      }
    }
  }
}

TEST_CASE("replay reproduces the report modulo wall_time") {
  const auto a = run_experiment(cfg("efi-attack", {{"n", 2}}, 200, 11));
  const auto replayed = run_experiment(parse_config(a.config.to_json()));
  CHECK(replay_fingerprint(a.to_json()) == replay_fingerprint(replayed.to_json()));
  const auto other = run_experiment(cfg("efi-attack", {{"n", 2}}, 200, 12));
  CHECK(replay_fingerprint(a.to_json()) != replay_fingerprint(other.to_json()));
}

TEST_CASE("pass is the conjunction of the checks") {
  for (const std::string e : {"welch", "phase-owsg", "efi-build", "commit-build", "commit-convert"}) {
    const auto r = run_experiment(cfg(e, Json::object(), e == "welch" ? 10 : 0));
    CHECK(!r.checks.empty());
    bool all = true;
    for (const auto& c : r.checks) all = all && c.holds;
    CHECK(r.pass == all);
    CHECK(r.pass);
    CHECK(exit_code_for(r) == 0);
  }
  auto r = run_experiment(cfg("efi-build", {{"n", 2}}));
  r.checks.push_back(make_check("forced", 1.0, "<=", 0.0, 0.0, Json::object()));
  r.pass = false;
  CHECK(exit_code_for(r) == 1);
}

TEST_CASE("examples") {
  const auto welch = run_experiment(cfg("welch", Json::object(), 100, 1));
  int ensembles = 0;
  for (const auto& c : welch.checks) ensembles += c.name.rfind("ensemble", 0) == 0 ? 1 : 0;
  CHECK(ensembles == 100);
  CHECK(welch.pass);

  const auto trivial = run_experiment(cfg("owsg-trivial", {{"n", 3}, {"m", 1}}, 10000, 7));
  CHECK(trivial.pass);
  CHECK(trivial.estimate >= 0.5 - 3.0 * trivial.games[0].at("sigma").get<double>());

  const auto efi = run_experiment(cfg("efi-build", {{"n", 4}}));
  CHECK(efi.records.at(0).at("fidelity").get<double>() <= 1.0 / 16.0 + 1e-12);
}

TEST_CASE("cap and exit-code mapping") {
  ScopedQubitCap cap(4);
  CHECK_THROWS_AS(run_experiment(cfg("owsg-trivial", {{"n", 2}, {"m", 5}}, 10)), CapExceeded);
  auto c = cfg("owsg-trivial", {{"n", 2}, {"m", 3}}, 10);
  c.max_qubits = 2;
  CHECK_THROWS_AS(run_experiment(c), CapExceeded);
  CHECK(qubit_cap() == 4);

  CHECK(exit_code_for_exception(ConfigError("x")) == 2);
  CHECK(exit_code_for_exception(InvalidArgument("x")) == 2);
  CHECK(exit_code_for_exception(CapExceeded("x")) == 3);
  CHECK(exit_code_for_exception(IoError("x")) == 4);
  CHECK(exit_code_for_exception(std::runtime_error("x")) == 1);
}

TEST_CASE("plots") {
  const auto dir = scratch("plot");
  SUBCASE("single point gives a single marker") {
    Sweep s{"x", "y <&>", {{"only", {{1.0, 0.5}}}}, "ref", {}};
    const auto svg = render_svg(s, "t");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("y &lt;&amp;&gt;") != std::string::npos);
    std::size_t markers = 0;
    for (auto p = svg.find("class=\"marker\""); p != std::string::npos; p = svg.find("class=\"marker\"", p + 1)) {
      ++markers;
    }
    CHECK(markers == 1);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
  SUBCASE("trivial sweep sits above 2^-m") {
    auto r = run_experiment(cfg("owsg-trivial", {{"n", 4}, {"m", {1, 2, 3, 4}}, {"scoring", "exact"}}, 2000));
    REQUIRE(r.sweep);
    REQUIRE(r.sweep->series.size() == 1);
    const auto& pts = r.sweep->series[0].points;
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(pts[i].second > r.sweep->reference[i].second);
    r.config.plot = (dir / "sweep.svg").string();
    write_outputs(r);
    const auto svg = slurp(dir / "sweep.svg");
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("2^-m") != std::string::npos);
  }
  SUBCASE("empty sweep writes nothing") {
    ExperimentReport r;
    r.sweep = Sweep{};
    CHECK_THROWS_AS(emit_plot(r, dir / "empty.svg"), InvalidArgument);
    CHECK(!fs::exists(dir / "empty.svg"));
    r.sweep.reset();
    CHECK_THROWS_AS(emit_plot(r, dir / "none.svg"), InvalidArgument);
    CHECK(!fs::exists(dir / "none.svg"));
  }
}

TEST_CASE("outputs are all-or-nothing") {
  const auto dir = scratch("outputs");
  auto r = run_experiment(cfg("efi-build", {{"n", 2}}));
  r.config.format = "both";
  r.config.output = (dir / "report.json").string();
  write_outputs(r);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "report.csv"));
  CHECK(Json::parse(slurp(dir / "report.json")).at("pass") == true);

  // A plot request without a sweep fails before the report is written.
  auto p = run_experiment(cfg("commit-build"));
  p.config.output = (dir / "commit.json").string();
  p.config.plot = (dir / "commit.svg").string();
  CHECK_THROWS_AS(write_outputs(p), InvalidArgument);
  CHECK(!fs::exists(dir / "commit.json"));

  r.config.output = (dir / "no-such-dir" / "r.json").string();
  r.config.format = "json";
  CHECK_THROWS_AS(write_outputs(r), IoError);
  for (const auto& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("criterion configs") {
  for (int id = 1; id <= 11; ++id) {
    const auto configs = criterion_configs(id, 42);
    CHECK(!configs.empty());
    for (const auto& c : configs) CHECK(c.seed == 42);
  }
  CHECK_THROWS_AS(criterion_configs(12, 42), InvalidArgument);
  CHECK(criterion_configs(1, 42)[0].trials == 10000);
  CHECK(criterion_configs(8, 42)[0].trials == 500);
}
