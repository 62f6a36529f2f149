#include "qclab/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>

#include "qclab/attacks/distinguishers.hpp"
#include "qclab/attacks/net.hpp"
#include "qclab/attacks/owsg_attacks.hpp"
#include "qclab/attacks/tomography.hpp"
#include "qclab/constructions/schemes.hpp"
#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/harness/emit.hpp"
#include "qclab/primitives/backends.hpp"
#include "qclab/primitives/commitment.hpp"
#include "qclab/primitives/efi.hpp"

namespace qclab {

std::size_t Sweep::point_count() const {
  std::size_t n = 0;
  for (const auto& s : series) n += s.points.size();
  return n;
}

Json Sweep::to_json() const {
  auto pts = [](const std::vector<std::pair<double, double>>& p) {
    Json a = Json::array();
    for (const auto& [x, y] : p) a.push_back({x, y});
    return a;
  };
  Json s = Json::array();
  for (const auto& series_entry : series) {
    s.push_back({{"label", series_entry.label}, {"points", pts(series_entry.points)}});
  }
  return {{"x_label", x_label},
          {"y_label", y_label},
          {"series", s},
          {"reference_label", reference_label},
          {"reference", pts(reference)}};
}

Json ExperimentReport::to_json(bool include_records) const {
  Json checks_json = Json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json());
  Json j = {{"schema_version", kSchemaVersion},
            {"experiment", config.experiment},
            {"config", config.to_json()},
            {"pass", pass},
            {"estimate", estimate},
            {"bound", bound},
            {"bound_source", bound_source},
            {"checks", checks_json},
            {"games", games},
            {"details", details},
            {"wall_time", wall_time}};
  if (sweep) j["sweep"] = sweep->to_json();
  if (include_records) j["records"] = records;
  return j;
}

namespace {

std::vector<int> int_list(const Json& v) {
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<int>());
  } else {
    out.push_back(v.get<int>());
  }
  if (out.empty()) throw ConfigError("empty parameter list");
  return out;
}

std::vector<double> double_list(const Json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<double>());
  } else {
    out.push_back(v.get<double>());
  }
  if (out.empty()) throw ConfigError("empty parameter list");
  return out;
}

std::vector<std::string> string_list(const Json& v) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<std::string>());
  } else {
    out.push_back(v.get<std::string>());
  }
  if (out.empty()) throw ConfigError("empty parameter list");
  return out;
}

template <class T>
T param(const ExperimentConfig& c, const char* key) {
  return c.params.at(key).get<T>();
}

// Experiment-level checks are reproduced by replaying the config.
BoundCheck value_check(std::string name, double lhs, const std::string& rel, double rhs,
                       double tolerance, Json info = Json::object()) {
  info["check"] = "experiment";
  return make_check(std::move(name), lhs, rel, rhs, tolerance, std::move(info));
}

BoundCheck game_check(std::string name, GameReport& g, double bound, const std::string& rel,
                      const std::string& source) {
  g.check_against(bound, rel, source);
  return value_check(std::move(name), g.estimate, rel, bound, g.slack_sigmas * g.sigma,
                     {{"game", g.game}, {"trials", g.trials}, {"sigma", g.sigma}, {"source", source}});
}

void add_game(ExperimentReport& r, const GameReport& g, const std::string& series) {
  Json summary = g.to_json(false);
  summary["series"] = series;
  r.games.push_back(std::move(summary));
  for (const auto& rec : g.log) {
    Json j = rec.to_json();
    j["series"] = series;
    r.records.push_back(std::move(j));
  }
}

void add_check_rows(ExperimentReport& r, const std::string& suite,
                    const std::vector<BoundCheck>& checks) {
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    r.records.push_back({{"suite", suite},
                         {"index", i},
                         {"name", c.name},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"margin", c.margin},
                         {"holds", c.holds}});
  }
}

// Aggregates a sweep and keeps full witnesses of any violations.
void add_sweep_checks(ExperimentReport& r, const std::string& suite,
                      const std::vector<BoundCheck>& checks, double tolerance) {
  add_check_rows(r, suite, checks);
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
  }
  for (const auto& name : names) {
    std::vector<BoundCheck> subset;
    for (const auto& c : checks) {
      if (c.name == name) subset.push_back(c);
    }
    r.checks.push_back(aggregate(suite + ": " + name, subset, tolerance));
    for (const auto& c : subset) {
      if (!c.holds) r.checks.push_back(c);
    }
  }
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string label_nm(int n, int m) {
  return "n=" + std::to_string(n) + ",m=" + std::to_string(m);
}

// ---- experiments -----------------------------------------------------------

void run_welch(const ExperimentConfig& c, ExperimentReport& r) {
  const int k = param<int>(c, "k");
  Rng root(c.seed);
  Rng ensembles = root.child("ensembles");
  const auto checks = welch_sweep(c.trials, ensembles, k);
  add_check_rows(r, "welch", checks);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto check = checks[i];
    check.name = "ensemble " + std::to_string(i) + " " + check.name;
    r.checks.push_back(std::move(check));
  }
  for (int m = 1; m <= 3; ++m) {
    std::vector<PureState> basis;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) basis.push_back(PureState::basis(m, x));
    const auto d = static_cast<Eigen::Index>(basis.size());
    const auto tight = welch_check(basis, Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d)), k);
    if (k == 1) {
      r.checks.push_back(make_check("welch equality case d=" + std::to_string(d), tight.lhs, "==",
                                    tight.rhs, 1e-9, tight.witness));
    } else {
      r.checks.push_back(tight);
    }
  }
  r.bound_source = "E|<phi_i|phi_j>|^2 >= 1/d over any ensemble";
}

void run_owsg_trivial(const ExperimentConfig& c, ExperimentReport& r) {
  const auto ns = int_list(c.params.at("n"));
  const auto ms = int_list(c.params.at("m"));
  if (ns.size() != ms.size() && ns.size() != 1 && ms.size() != 1) {
    throw ConfigError("n and m lists must have equal length");
  }
  const auto scoring = param<std::string>(c, "scoring");
  if (scoring != "both" && scoring != "exact" && scoring != "sampled") {
    throw ConfigError("scoring must be exact, sampled or both");
  }
  const std::size_t points = std::max(ns.size(), ms.size());
  Rng root(c.seed);
  Sweep sweep{"m (output qubits)", "trivial adversary win probability", {}, "2^-m", {}};
  SweepSeries exact_series{"exact scoring", {}};
  SweepSeries sampled_series{"sampled scoring", {}};
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const int n = ns.size() == 1 ? ns[0] : ns[i];
    const int m = ms.size() == 1 ? ms[0] : ms[i];
    const std::string label = label_nm(n, m);
    Rng point = root.child(label);
    Rng scheme_rng = point.child("scheme");
    const auto scheme = prsg_to_owsg(make_haar_prsg(n, m, scheme_rng));
    const double floor = std::ldexp(1.0, -m);
    Json detail = Json::object();

    std::optional<TrivialWinLaw> law;
    if (n <= 12) {
      law = trivial_win_law(scheme);
      detail["law"] = law->to_json();
      r.checks.push_back(value_check(label + " enumerated exact win equals E|<phi_k|phi_k'>|^2", law->by_verifier,
                                     "==", law->by_gram, 1e-9));
      r.checks.push_back(value_check(label + " E|<phi_k|phi_k'>|^2 >= 2^-m", law->by_gram, ">=",
                                     floor, 1e-12));
    }
    Rng pair_rng = point.child("pairs");
    const auto pq = expected_pairwise_quantities(scheme, pair_rng);
    detail["pairwise"] = pq.to_json();
    r.checks.push_back(
        value_check(label + " E TD <= sqrt(1 - 2^-m)", pq.expected_td, "<=", pq.bound, 1e-9));
    r.checks.push_back(value_check(label + " correctness - E TD >= 2^-(m+1)", pq.win_lb, ">=",
                                   pq.floor, 1e-9));

    for (const std::string mode : {"exact", "sampled"}) {
      if (scoring != "both" && scoring != mode) continue;
      Rng game_rng = point.child(mode);
      OnewaynessOptions opts;
      opts.trials = c.trials;
      opts.scoring = mode == "exact" ? Scoring::Exact : Scoring::Sampled;
      auto game = run_onewayness_game(scheme, trivial_adversary(scheme), opts, game_rng);
      game.game = "owsg-trivial " + label;
      r.checks.push_back(game_check(label + " " + mode + " win >= 2^-m", game, floor, ">=",
                                    "welch floor 2^-m on the trivial adversary"));
      if (law) {
        r.checks.push_back(value_check(label + " " + mode + " estimate matches exact law",
                                       game.estimate, "==", law->by_gram, 3.0 * game.sigma));
      }
      worst_slack = std::min(worst_slack, game.estimate - floor);
      if (mode == "exact") {
        exact_series.points.emplace_back(m, game.estimate);
        if (i == 0 || game.estimate - floor <= r.estimate - r.bound) {
          r.estimate = game.estimate;
          r.bound = floor;
        }
      } else {
        sampled_series.points.emplace_back(m, game.estimate);
      }
      add_game(r, game, label + "/" + mode);
    }
    sweep.reference.emplace_back(m, floor);
    r.details[label] = detail;
  }
  if (!exact_series.points.empty()) sweep.series.push_back(exact_series);
  if (!sampled_series.points.empty()) sweep.series.push_back(sampled_series);
  if (exact_series.points.empty() && !sampled_series.points.empty()) {
    r.estimate = sampled_series.points.front().second;
    r.bound = sweep.reference.front().second;
  }
  r.sweep = sweep;
  r.bound_source = "trivial adversary wins with probability >= 2^-m";
}

void run_owsg_net(const ExperimentConfig& c, ExperimentReport& r) {
  const int n = param<int>(c, "n");
  const int m = param<int>(c, "m");
  const double delta_gap = param<double>(c, "delta");
  const auto tomo = param<std::string>(c, "tomography");
  if (tomo != "oracle" && tomo != "sampled") throw ConfigError("tomography must be oracle or sampled");
  NetAttackOptions options;
  options.tomography = tomo == "oracle" ? AccessMode::Oracle : AccessMode::Sampled;
  options.perturbation_fraction = param<double>(c, "perturbation");
  options.failure_budget = param<double>(c, "failure_budget");
  const auto cap = param<std::int64_t>(c, "max_iterations");
  if (cap > 0) options.max_iterations = cap;
  options.beta = param<double>(c, "beta");
  options.lambda = param<double>(c, "lambda");

  Rng root(c.seed);
  Rng scheme_rng = root.child("scheme");
  const auto scheme = prsg_to_owsg(make_haar_prsg(n, m, scheme_rng));
  const auto attack = net_attack(scheme, delta_gap, options);
  const double gamma = attack.params.gamma;

  OnewaynessOptions game_opts;
  game_opts.trials = c.trials;
  game_opts.access = options.tomography;
  game_opts.record_td = true;
  if (options.tomography == AccessMode::Sampled) {
    const auto dim = dimension_of(m);
    game_opts.copies = tomography_shots_per_pauli(dim, gamma, options.beta) * (dim * dim - 1);
  }
  Rng game_rng = root.child("game");
  auto game = run_onewayness_game(scheme, attack.adversary, game_opts, game_rng);
  game.game = "owsg-net";
  r.checks.push_back(game_check("win rate >= 1 - Delta", game, 1.0 - delta_gap, ">=",
                                "tomography + net attack succeeds with probability >= 1 - Delta"));
  const double trials = static_cast<double>(c.trials);
  const double bot_rate = static_cast<double>(game.bot_count) / trials;
  r.checks.push_back(value_check("bottom rate <= gamma", bot_rate, "<=", gamma,
                                 3.0 * std::sqrt(gamma * (1.0 - gamma) / trials)));
  double max_td = 0.0;
  std::int64_t answered = 0;
  for (const auto& rec : game.log) {
    if (rec.bot || !rec.td_to_target) continue;
    ++answered;
    max_td = std::max(max_td, *rec.td_to_target);
  }
  r.checks.push_back(value_check("recovered state within 4 gamma of the target", max_td, "<=",
                                 4.0 * gamma, 1e-12, {{"answered", answered}}));
  const double d2 = std::pow(static_cast<double>(attack.net->dim), 2.0);
  const double c_impl = attack.net->construction.at("c_impl").get<double>();
  r.checks.push_back(value_check("|Net| <= (C_impl/gamma)^{d^2}",
                                 static_cast<double>(attack.net->size()), "<=",
                                 std::pow(c_impl / gamma, d2), 0.0));
  const auto audit_samples = param<std::int64_t>(c, "audit_samples");
  if (audit_samples > 0) {
    Rng audit_rng = root.child("audit");
    const auto coverage = audit_net_covering(*attack.net, audit_samples, audit_rng);
    r.details["coverage"] = coverage.to_json();
    r.checks.push_back(value_check("net covering fraction", coverage.fraction, ">=", 0.995, 0.0));
  }
  r.details["attack"] = attack.params.to_json();
  r.details["net"] = attack.net->construction;
  r.details["bot_rate"] = bot_rate;
  add_game(r, game, "net-attack");
  r.estimate = game.estimate;
  r.bound = 1.0 - delta_gap;
  r.bound_source = "tomography + net attack succeeds with probability >= 1 - Delta";
}

void run_efi_build(const ExperimentConfig& c, ExperimentReport& r) {
  const auto ns = int_list(c.params.at("n"));
  const auto kind = param<std::string>(c, "prg_kind");
  Rng root(c.seed);
  Sweep sweep{"n (seed bits)", "F(rho_0, rho_1)", {{"fidelity", {}}}, "2^-n", {}};
  for (int n : ns) {
    Rng prg_rng = root.child("prg-n" + std::to_string(n));
    const auto pair = prg_efi(make_toy_prg(n, prg_rng, kind));
    const double f = fidelity(pair.rho0, pair.rho1);
    const double td = trace_distance(pair.rho0, pair.rho1);
    // Both states are diagonal: classical fidelity and total variation.
    const Eigen::VectorXd p = pair.rho0.matrix().diagonal().real();
    const Eigen::VectorXd q = pair.rho1.matrix().diagonal().real();
    const double f_diag = std::pow((p.array() * q.array()).sqrt().sum(), 2.0);
    const double td_diag = 0.5 * (p - q).cwiseAbs().sum();
    const std::string label = "n=" + std::to_string(n);
    const double f_bound = std::ldexp(1.0, -n);
    const double td_bound = 1.0 - std::pow(2.0, -n / 2.0);
    r.checks.push_back(value_check(label + " F <= 2^-n", f, "<=", f_bound, 1e-12));
    r.checks.push_back(value_check(label + " TD >= 1 - 2^-n/2", td, ">=", td_bound, 1e-12));
    r.checks.push_back(value_check(label + " F matches the diagonal route", f, "==", f_diag, 1e-9));
    r.checks.push_back(value_check(label + " TD matches the diagonal route", td, "==", td_diag, 1e-9));
    r.records.push_back({{"n", n},
                         {"fidelity", f},
                         {"trace_distance", td},
                         {"fidelity_bound", f_bound},
                         {"td_bound", td_bound}});
    sweep.series[0].points.emplace_back(n, f);
    sweep.reference.emplace_back(n, f_bound);
    r.estimate = f;
    r.bound = f_bound;
  }
  r.sweep = sweep;
  r.bound_source = "F(rho_0, rho_1) <= 2^-n for the PRG pair";
}

EfiTomography parse_efi_mode(const std::string& s) {
  if (s == "exact") return EfiTomography::Exact;
  if (s == "adversarial") return EfiTomography::Adversarial;
  if (s == "random") return EfiTomography::Random;
  if (s == "sampled") return EfiTomography::Sampled;
  throw ConfigError("unknown tomography mode '" + s + "'");
}

void run_efi_attack(const ExperimentConfig& c, ExperimentReport& r) {
  const int n = param<int>(c, "n");
  const auto modes = string_list(c.params.at("modes"));
  const auto scoring_name = param<std::string>(c, "scoring");
  if (scoring_name != "exact" && scoring_name != "sampled") {
    throw ConfigError("scoring must be exact or sampled");
  }
  const Scoring scoring = scoring_name == "exact" ? Scoring::Exact : Scoring::Sampled;
  Rng root(c.seed);
  Rng prg_rng = root.child("prg");
  const auto pair = prg_efi(make_toy_prg(n, prg_rng));
  const double td = trace_distance(pair.rho0, pair.rho1);
  const double p_given = param<double>(c, "p");
  const double p = p_given > 0.0 ? p_given : 1.0 / td;
  r.details["trace_distance"] = td;
  r.details["p"] = p;
  bool first = true;
  for (const auto& mode_name : modes) {
    EfiDistinguisherOptions opts;
    opts.p = p;
    opts.tomography = parse_efi_mode(mode_name);
    opts.cached = param<bool>(c, "cached");
    Rng attack_rng = root.child("attack-" + mode_name);
    const auto attack = efi_distinguisher(pair, opts, attack_rng);
    Rng game_rng = root.child("game-" + mode_name);
    auto game = run_efi_game(pair, attack.distinguisher, c.trials, game_rng, scoring);
    game.game = "efi-attack " + mode_name;
    if (opts.tomography == EfiTomography::Exact) {
      r.checks.push_back(game_check(mode_name + " advantage >= TD - 8 delta", game,
                                    attack.guaranteed, ">=",
                                    "spectral distinguisher advantage >= TD - 8 delta"));
      r.checks.push_back(value_check(mode_name + " advantage equals TD", game.estimate, "==", td,
                                     3.0 * game.sigma + 1e-12));
    } else {
      r.checks.push_back(game_check(mode_name + " advantage >= TD - 8 delta", game,
                                    attack.guaranteed, ">=",
                                    "spectral distinguisher advantage >= TD - 8 delta"));
    }
    r.details["attack-" + mode_name] = attack.to_json();
    add_game(r, game, mode_name);
    if (first) {
      r.estimate = game.estimate;
      r.bound = attack.guaranteed;
      first = false;
    }
  }
  r.bound_source = "spectral distinguisher advantage >= TD - 8 delta = TD/2 at p = 1/TD";
}

void run_fingerprint(const ExperimentConfig& c, ExperimentReport& r) {
  const int ell = param<int>(c, "ell");
  const double eta = param<double>(c, "eta");
  FingerprintOptions opts;
  opts.code_length = param<int>(c, "code_length");
  opts.max_tries = param<int>(c, "max_tries");
  Rng root(c.seed);
  Rng owf_rng = root.child("owf");
  const auto owf = make_toy_owf(param<std::string>(c, "owf_kind"), ell, ell, owf_rng);
  const auto fp = fingerprint_for(owf, eta, opts);
  const auto scheme = fingerprint_owsg(owf, eta, opts);
  const std::uint64_t keys = scheme.key_count();
  const auto dim = dimension_of(scheme.output_qubits());
  CMatrix cols(dim, static_cast<Eigen::Index>(keys));
  double min_correct = 1.0;
  for (std::uint64_t k = 0; k < keys; ++k) {
    const auto state = scheme.pure_state(k);
    cols.col(static_cast<Eigen::Index>(k)) = state.amplitudes();
    const double correct = scheme.verify(k, state);
    min_correct = std::min(min_correct, correct);
    r.records.push_back({{"key", k}, {"image", owf(k)}, {"correctness", correct}});
  }
  const CMatrix gram = cols.adjoint() * cols;
  double max_overlap = 0.0;
  double max_accept = 0.0;
  double max_prediction_error = 0.0;
  std::int64_t pairs = 0;
  for (std::uint64_t a = 0; a < keys; ++a) {
    for (std::uint64_t b = a + 1; b < keys; ++b) {
      const std::uint64_t ya = owf(a);
      const std::uint64_t yb = owf(b);
      if (ya == yb) continue;
      ++pairs;
      const Complex g = gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      max_overlap = std::max(max_overlap, std::abs(g));
      max_accept = std::max(max_accept, std::norm(g));
      max_prediction_error =
          std::max(max_prediction_error, std::abs(g - Complex(fp.predicted_overlap(ya, yb), 0.0)));
    }
  }
  int index_qubits = 0;
  while ((1 << index_qubits) < fp.code().length()) ++index_qubits;
  r.checks.push_back(value_check("max overlap <= delta^r", max_overlap, "<=", fp.overlap_bound(), 1e-12));
  r.checks.push_back(value_check("delta^r <= eta", fp.overlap_bound(), "<=", eta, 0.0));
  r.checks.push_back(value_check("overlaps equal (agreement/m)^r", max_prediction_error, "<=", 0.0, 1e-9));
  r.checks.push_back(value_check("correctness", min_correct, "==", 1.0, 1e-9));
  r.checks.push_back(value_check("cross-image acceptance <= eta^2", max_accept, "<=", eta * eta, 1e-12));
  r.checks.push_back(value_check("register size r(ceil(log m) + 1)", scheme.output_qubits(), "==",
                                 fp.repetitions() * (index_qubits + 1), 0.0));
  r.details = {{"code", fp.to_json()},
               {"r", fp.repetitions()},
               {"delta", fp.code().delta()},
               {"d_min", fp.code().d_min()},
               {"overlap_bound", fp.overlap_bound()},
               {"total_qubits", scheme.output_qubits()},
               {"distinct_pairs", pairs},
               {"max_overlap", max_overlap},
               {"max_acceptance", max_accept},
               {"owf", owf.to_json()}};
  r.estimate = max_overlap;
  r.bound = eta;
  r.bound_source = "fingerprint overlaps <= delta^r <= eta";
}

void run_phase_owsg(const ExperimentConfig& c, ExperimentReport& r) {
  const int ell = param<int>(c, "ell");
  const auto lambda = param<std::uint64_t>(c, "lambda");
  Rng root(c.seed);
  Rng owf_rng = root.child("owf");
  const auto owf = make_toy_owf(param<std::string>(c, "owf_kind"), ell, ell, owf_rng);
  const auto scheme = phase_owsg(owf, lambda);
  const std::uint64_t keys = scheme.key_count();
  const auto dim = dimension_of(scheme.output_qubits());
  CMatrix cols(dim, static_cast<Eigen::Index>(keys));
  double min_correct = 1.0;
  for (std::uint64_t k = 0; k < keys; ++k) {
    const auto state = scheme.pure_state(k);
    cols.col(static_cast<Eigen::Index>(k)) = state.amplitudes();
    min_correct = std::min(min_correct, scheme.verify(k, state));
  }
  const CMatrix gram = cols.adjoint() * cols;
  const double per_digit =
      std::sqrt((1.0 + std::cos(2.0 * std::numbers::pi / static_cast<double>(lambda))) / 2.0);
  double max_excess = -std::numeric_limits<double>::infinity();
  double max_product_error = 0.0;
  double max_overlap = 0.0;
  for (std::uint64_t a = 0; a < keys; ++a) {
    const auto da = phase_digits(owf(a), ell, lambda);
    for (std::uint64_t b = a + 1; b < keys; ++b) {
      const auto db = phase_digits(owf(b), ell, lambda);
      int differing = 0;
      double product = 1.0;
      for (std::size_t j = 0; j < da.size(); ++j) {
        if (da[j] != db[j]) ++differing;
        product *= phase_digit_overlap(static_cast<std::int64_t>(db[j]) - static_cast<std::int64_t>(da[j]),
                                       lambda);
      }
      const double ov = std::abs(gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      max_excess = std::max(max_excess, ov - std::pow(per_digit, differing));
      max_product_error = std::max(max_product_error, std::abs(ov - product));
      if (differing > 0) max_overlap = std::max(max_overlap, ov);
    }
  }
  r.checks.push_back(value_check("overlap - cos(pi/lambda)^{#differing digits}", max_excess, "<=",
                                 0.0, 1e-9));
  r.checks.push_back(value_check("overlap equals the digit product", max_product_error, "<=", 0.0, 1e-9));
  r.checks.push_back(value_check("correctness", min_correct, "==", 1.0, 1e-9));
  r.details = {{"lambda", lambda},
               {"digits", phase_digit_count(ell, lambda)},
               {"per_digit_bound", per_digit},
               {"max_overlap", max_overlap},
               {"owf", owf.to_json()}};
  r.estimate = max_excess;
  r.bound = 0.0;
  r.bound_source = "phase-state overlap <= per-digit factor ^ number of differing digits";
}

void run_prsg_owsg(const ExperimentConfig& c, ExperimentReport& r) {
  const int n = param<int>(c, "n");
  const int m = param<int>(c, "m");
  const double h = param<double>(c, "h");
  Rng root(c.seed);
  Rng prsg_rng = root.child("prsg");
  const auto scheme = prsg_to_owsg(make_haar_prsg(n, m, prsg_rng));
  const double delta = prsg_delta(n, m, h);
  Rng pair_rng = root.child("pairs");
  const auto pq = expected_pairwise_quantities(scheme, pair_rng);
  r.checks.push_back(value_check("correctness", pq.correctness, "==", 1.0, 1e-9));
  Rng tail_rng = root.child("tail");
  auto tail = haar_concentration_check(m, h, param<std::int64_t>(c, "tail_samples"), tail_rng);
  tail.name = "haar tail Pr[|<psi|phi>|^2 >= h] = (1-h)^{2^m-1}";
  r.checks.push_back(tail);
  OnewaynessOptions opts;
  opts.trials = c.trials;
  Rng game_rng = root.child("game");
  auto game = run_onewayness_game(scheme, trivial_adversary(scheme), opts, game_rng);
  game.game = "prsg-owsg trivial";
  r.checks.push_back(game_check("trivial adversary <= delta", game, std::min(delta, 1.0), "<=",
                                "delta = 2^n (1-h)^{2^m-1} + h"));
  add_game(r, game, "trivial");
  r.details = {{"delta", delta}, {"vacuous", delta >= 1.0}, {"pairwise", pq.to_json()}};
  r.estimate = game.estimate;
  r.bound = delta;
  r.bound_source = "delta = 2^n (1-h)^{2^m-1} + h";
}

CanonicalCommitment build_prg_commitment(const ExperimentConfig& c) {
  Rng root(c.seed);
  Rng prg_rng = root.child("prg");
  return prg_commitment(make_toy_prg(param<int>(c, "n"), prg_rng));
}

void run_commit_build(const ExperimentConfig& c, ExperimentReport& r) {
  const int n = param<int>(c, "n");
  const auto com = build_prg_commitment(c);
  for (int b = 0; b < 2; ++b) {
    r.checks.push_back(value_check("reveal correctness b=" + std::to_string(b),
                                   reveal_verify(com, b, com.honest_state(b)), "==", 1.0, 1e-9));
  }
  const auto opt = honest_binding_optimum(com);
  const double bound = std::ldexp(1.0, -n);
  r.checks.push_back(value_check("honest binding optimum <= 2^-n", opt.fidelity, "<=", bound, 1e-12));
  r.checks.push_back(value_check("Uhlmann route equals fidelity", opt.uhlmann, "==", opt.fidelity, 1e-9));
  if (opt.unitary) {
    const auto attacked = apply_on_reveal(*opt.unitary, com.honest_state(0), com.reveal_qubits());
    r.checks.push_back(value_check("Uhlmann unitary attains the optimum",
                                   reveal_verify(com, 1, attacked), "==", opt.fidelity, 1e-9));
  }
  const auto pair = commit_marginals(com);
  const double td = trace_distance(pair.rho0, pair.rho1);
  Rng hide_rng = Rng(c.seed).child("hiding");
  const auto hiding = hiding_advantage(com, helstrom_distinguisher(pair), 1, hide_rng, Scoring::Exact);
  r.checks.push_back(value_check("exact Helstrom hiding advantage equals TD", hiding.estimate, "==",
                                 td, 1e-9));
  r.details = {{"reveal_qubits", com.reveal_qubits()},
               {"commit_qubits", com.commit_qubits()},
               {"binding_fidelity", opt.fidelity},
               {"hiding_trace_distance", td},
               {"metadata", com.metadata()}};
  r.estimate = opt.fidelity;
  r.bound = bound;
  r.bound_source = "honest binding optimum F(rho_0, rho_1) <= 2^-n";
}

void run_commit_convert(const ExperimentConfig& c, ExperimentReport& r) {
  const int n = param<int>(c, "n");
  const auto com = build_prg_commitment(c);
  const auto conv = flavor_convert(com);
  for (int b = 0; b < 2; ++b) {
    r.checks.push_back(value_check("converted reveal correctness b=" + std::to_string(b),
                                   reveal_verify(conv, b, conv.honest_state(b)), "==", 1.0, 1e-9));
  }
  r.checks.push_back(value_check("|C'| = 2n + 1", conv.commit_qubits(), "==", 2 * n + 1, 0.0));
  r.checks.push_back(value_check("|R'| = |C|", conv.reveal_qubits(), "==", com.commit_qubits(), 0.0));
  const auto pair = commit_marginals(conv);
  const auto opt = honest_binding_optimum(conv);
  r.details = {{"reveal_qubits", conv.reveal_qubits()},
               {"commit_qubits", conv.commit_qubits()},
               {"converted_binding_fidelity", opt.fidelity},
               {"converted_hiding_trace_distance", trace_distance(pair.rho0, pair.rho1)},
               {"metadata", conv.metadata()}};
  r.estimate = conv.commit_qubits();
  r.bound = 2 * n + 1;
  r.bound_source = "flavor conversion commits on 2n + 1 qubits";
}

void run_commit_attack(const ExperimentConfig& c, ExperimentReport& r) {
  const auto com = build_prg_commitment(c);
  const auto target = param<bool>(c, "convert") ? flavor_convert(com) : com;
  const auto attack = swap_hiding_attack(target);
  const auto& a = attack.analysis;
  r.checks.push_back(value_check("Tr rho_0^2 >= 2^-|R|", a.purity0, ">=", a.rank_bound, 1e-12));
  r.checks.push_back(value_check("prediction matches swap acceptance gap", a.predicted, "==",
                                 a.accept0 - a.accept1, 1e-12));
  r.checks.push_back(value_check("prediction >= (2^-|R| - F)/2", a.predicted, ">=",
                                 0.5 * (a.rank_bound - a.fidelity), 1e-12));
  Rng game_rng = Rng(c.seed).child("game");
  auto game = hiding_advantage(target, attack.distinguisher, c.trials, game_rng, Scoring::Sampled);
  game.game = "swap hiding attack";
  const double n = static_cast<double>(c.trials);
  r.checks.push_back(value_check("arm 0 rate matches (1 + Tr rho_0^2)/2", game.arm0->rate, "==",
                                 a.accept0, 3.0 * std::sqrt(a.accept0 * (1.0 - a.accept0) / n) + 1e-12));
  r.checks.push_back(value_check("arm 1 rate matches (1 + Tr rho_0 rho_1)/2", game.arm1->rate, "==",
                                 a.accept1, 3.0 * std::sqrt(a.accept1 * (1.0 - a.accept1) / n) + 1e-12));
  r.checks.push_back(value_check("advantage matches prediction", game.estimate, "==", a.predicted,
                                 3.0 * game.sigma + 1e-12));
  game.check_against(a.predicted, ">=", "swap test advantage (Tr rho_0^2 - Tr rho_0 rho_1)/2");
  add_game(r, game, "swap");
  r.details = {{"analysis", a.to_json()},
               {"reveal_qubits", target.reveal_qubits()},
               {"commit_qubits", target.commit_qubits()}};
  r.estimate = game.estimate;
  r.bound = a.predicted;
  r.bound_source = "swap test advantage (Tr rho_0^2 - Tr rho_0 rho_1)/2";
}

void run_tomography_bench(const ExperimentConfig& c, ExperimentReport& r) {
  const int q = param<int>(c, "qubits");
  TomographyConfig cfg;
  cfg.delta = param<double>(c, "delta");
  cfg.beta = param<double>(c, "beta");
  cfg.lambda = param<double>(c, "lambda");
  const auto kind = param<std::string>(c, "state");
  Rng root(c.seed);
  Rng target_rng = root.child("target");
  DensityMatrix target = DensityMatrix::maximally_mixed(q);
  if (kind == "random") {
    target = random_density_matrix(q, target_rng);
  } else if (kind == "pure") {
    target = DensityMatrix::from_pure(haar_sample(q, target_rng));
  } else if (kind != "mixed") {
    throw ConfigError("state must be random, pure or mixed");
  }
  const auto dim = dimension_of(q);
  std::int64_t failures = 0;
  double max_error = 0.0;
  double sum_error = 0.0;
  std::optional<TomographyEstimate> last;
  Rng runs = root.child("runs");
  for (std::int64_t i = 0; i < c.trials; ++i) {
    Rng run = runs.child(static_cast<std::uint64_t>(i));
    last = tomography_sampled(target, cfg, run);
    const double err = half_trace_norm(last->estimate.matrix() - target.matrix());
    const bool failed = err > cfg.delta;
    failures += failed ? 1 : 0;
    max_error = std::max(max_error, err);
    sum_error += err;
    r.records.push_back({{"run", i}, {"error", err}, {"failed", failed}});
  }
  if (!last) throw ConfigError("tomography-bench needs trials >= 1");
  const double rate = static_cast<double>(failures) / static_cast<double>(c.trials);
  r.checks.push_back(value_check("failure rate <= beta", rate, "<=", cfg.beta, 0.0));
  const double d = static_cast<double>(dim);
  r.checks.push_back(value_check("logged copies = 144 lambda d^4 / delta^2", last->reference_copies, "==",
                                 144.0 * cfg.lambda * d * d * d * d / (cfg.delta * cfg.delta), 0.0));
  r.checks.push_back(value_check("reference budget d=4, delta=0.1, lambda=16",
                                 reference_tomography_copies(16.0, 4, 0.1), "==", 58982400.0, 1e-6));
  r.details = {{"shots_per_pauli", last->shots_per_pauli},
               {"copies_per_run", last->copies_used},
               {"reference_copies", last->reference_copies},
               {"failures", failures},
               {"max_error", max_error},
               {"mean_error", sum_error / static_cast<double>(c.trials)},
               {"target", matrix_to_json(target.matrix())}};
  r.estimate = rate;
  r.bound = cfg.beta;
  r.bound_source = "tomography error <= delta with probability >= 1 - beta";
}

void run_bounds_suite(const ExperimentConfig& c, ExperimentReport& r) {
  const int q = param<int>(c, "qubits");
  Rng root(c.seed);
  for (const auto& suite : string_list(c.params.at("suites"))) {
    if (suite == "haar") {
      const auto samples = param<std::int64_t>(c, "haar_samples");
      std::vector<BoundCheck> checks;
      for (int m : int_list(c.params.at("haar_m"))) {
        for (double h : double_list(c.params.at("haar_h"))) {
          Rng hr = root.child("haar-m" + std::to_string(m) + "-h" + short_double(h));
          auto check = haar_concentration_check(m, h, samples, hr);
          check.name = "haar tail m=" + std::to_string(m) + " h=" + short_double(h);
          checks.push_back(check);
        }
      }
      add_check_rows(r, "haar", checks);
      r.checks.insert(r.checks.end(), checks.begin(), checks.end());
    } else if (suite == "trf") {
      Rng tr = root.child("trf");
      add_sweep_checks(r, "trf", trf_sweep(c.trials, q, tr), 1e-9);
    } else if (suite == "projector") {
      Rng pr = root.child("projector");
      add_sweep_checks(r, "projector", projector_td_sweep(c.trials, q, pr), 1e-9);
    } else if (suite == "fidelity_mix") {
      Rng fr = root.child("fidelity-mix");
      std::vector<BoundCheck> checks;
      for (std::int64_t i = 0; i < c.trials; ++i) {
        Rng inst = fr.child(static_cast<std::uint64_t>(i));
        const int m = 1 + static_cast<int>(inst.below(4));
        const int n = static_cast<int>(inst.below(static_cast<std::uint64_t>(std::min(m + 4, 6)) + 1));
        checks.push_back(fidelity_mix_check(n, m, inst));
      }
      add_sweep_checks(r, "fidelity_mix", checks, 1e-9);
    } else {
      throw ConfigError("unknown bounds suite '" + suite + "'");
    }
  }
  r.bound_source = "numerical inequality suites";
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<ScopedQubitCap> cap;
  if (config.max_qubits) cap.emplace(*config.max_qubits);
  ExperimentReport r;
  r.config = config;
  const std::string& e = config.experiment;
  try {
    if (e == "welch") run_welch(config, r);
    else if (e == "owsg-trivial") run_owsg_trivial(config, r);
    else if (e == "owsg-net") run_owsg_net(config, r);
    else if (e == "efi-build") run_efi_build(config, r);
    else if (e == "efi-attack") run_efi_attack(config, r);
    else if (e == "fingerprint") run_fingerprint(config, r);
    else if (e == "phase-owsg") run_phase_owsg(config, r);
    else if (e == "prsg-owsg") run_prsg_owsg(config, r);
    else if (e == "commit-build") run_commit_build(config, r);
    else if (e == "commit-convert") run_commit_convert(config, r);
    else if (e == "commit-attack") run_commit_attack(config, r);
    else if (e == "tomography-bench") run_tomography_bench(config, r);
    else if (e == "bounds-suite") run_bounds_suite(config, r);
    else throw ConfigError("unknown experiment '" + e + "'");
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("bad parameter value: ") + ex.what());
  }
  r.pass = !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const BoundCheck& c) { return c.holds; });
  if (e == "welch" || e == "bounds-suite") {
    // Headline: smallest slack (margin + tolerance) over all checks.
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& c : r.checks) slack = std::min(slack, c.margin + c.tolerance);
    r.estimate = r.checks.empty() ? 0.0 : slack;
    r.bound = 0.0;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code_for(const ExperimentReport& report) { return report.pass ? 0 : 1; }

int exit_code_for_exception(const std::exception& e) {
  if (dynamic_cast<const CapExceeded*>(&e)) return 3;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const ParamTooLarge*>(&e) || dynamic_cast<const BadDistribution*>(&e) ||
      dynamic_cast<const NetTooLarge*>(&e) || dynamic_cast<const BudgetOverflow*>(&e) ||
      dynamic_cast<const SearchExhausted*>(&e)) {
    return 2;
  }
  return 1;
}

namespace {

void strip_wall_time(Json& j) {
  if (j.is_object()) {
    j.erase("wall_time");
    for (auto& [key, value] : j.items()) strip_wall_time(value);
  } else if (j.is_array()) {
    for (auto& e : j) strip_wall_time(e);
  }
}

}  // namespace

std::string replay_fingerprint(const Json& report) {
  Json copy = report;
  strip_wall_time(copy);
  return dump_json(copy, 0);
}

}  // namespace qclab
