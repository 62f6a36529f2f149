#include "qclab/attacks/owsg_attacks.hpp"

#include <cmath>
#include <limits>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {

Adversary trivial_adversary(const OwsgScheme& scheme) {
  return [&scheme](TargetAccess&, Rng& rng) -> std::optional<Key> {
    return scheme.sample_key(rng);
  };
}

Json TrivialWinLaw::to_json() const {
  return Json{{"by_verifier", by_verifier}, {"by_gram", by_gram}, {"floor", floor}, {"keys", keys}};
}

TrivialWinLaw trivial_win_law(const OwsgScheme& scheme) {
  if (!scheme.is_pure() || !scheme.has_uniform_keys()) {
    throw InvalidArgument("exact trivial-adversary law needs a uniform-key pure scheme");
  }
  if (scheme.key_bits() > 12) throw ParamTooLarge("too many keys to enumerate");
  const std::uint64_t keys = scheme.key_count();
  const auto dim = dimension_of(scheme.output_qubits());
  std::vector<PureState> states;
  states.reserve(keys);
  CMatrix columns(dim, static_cast<Eigen::Index>(keys));
  for (std::uint64_t k = 0; k < keys; ++k) {
    states.push_back(scheme.pure_state(k));
    columns.col(static_cast<Eigen::Index>(k)) = states.back().amplitudes();
  }
  const double pairs = static_cast<double>(keys) * static_cast<double>(keys);

  TrivialWinLaw law;
  law.keys = keys;
  law.floor = std::pow(2.0, -scheme.output_qubits());
  double sum = 0.0;
  for (std::uint64_t k = 0; k < keys; ++k) {
    for (std::uint64_t kp = 0; kp < keys; ++kp) sum += scheme.verify(kp, states[k]);
  }
  law.by_verifier = sum / pairs;
  const CMatrix gram = columns.adjoint() * columns;
  law.by_gram = gram.cwiseAbs2().sum() / pairs;
  return law;
}

Json PairwiseQuantities::to_json() const {
  return Json{{"expected_td", expected_td},
              {"expected_overlap_sq", expected_overlap_sq},
              {"bound", bound},
              {"correctness", correctness},
              {"win_lb", win_lb},
              {"floor", floor},
              {"enumerated", enumerated},
              {"pairs", pairs}};
}

PairwiseQuantities expected_pairwise_quantities(const OwsgScheme& scheme, Rng& rng,
                                                int max_enumerate_bits, std::int64_t samples) {
  PairwiseQuantities q;
  const int m = scheme.output_qubits();
  q.bound = std::sqrt(1.0 - std::pow(2.0, -m));
  q.floor = std::pow(2.0, -m - 1);

  auto td_and_overlap = [&scheme](Key a, Key b) {
    if (scheme.is_pure()) {
      const double ov = overlap_squared(scheme.pure_state(a), scheme.pure_state(b));
      return std::pair{std::sqrt(std::max(0.0, 1.0 - ov)), ov};
    }
    const DensityMatrix ra = scheme.state(a);
    const DensityMatrix rb = scheme.state(b);
    return std::pair{trace_distance(ra, rb), trace_product(ra.matrix(), rb.matrix())};
  };

  double td = 0.0;
  double ov = 0.0;
  double correct = 0.0;
  if (scheme.has_uniform_keys() && scheme.key_bits() <= max_enumerate_bits) {
    q.enumerated = true;
    const std::uint64_t keys = scheme.key_count();
    for (std::uint64_t a = 0; a < keys; ++a) {
      correct += scheme.verify(a, scheme.state(a));
      for (std::uint64_t b = 0; b < keys; ++b) {
        const auto [t, o] = td_and_overlap(a, b);
        td += t;
        ov += o;
      }
    }
    q.pairs = static_cast<std::int64_t>(keys * keys);
    correct /= static_cast<double>(keys);
  } else {
    for (std::int64_t i = 0; i < samples; ++i) {
      Rng r = rng.child(static_cast<std::uint64_t>(i));
      const Key a = scheme.sample_key(r);
      const Key b = scheme.sample_key(r);
      correct += scheme.verify(a, scheme.state(a));
      const auto [t, o] = td_and_overlap(a, b);
      td += t;
      ov += o;
    }
    q.pairs = samples;
    correct /= static_cast<double>(samples);
  }
  q.expected_td = td / static_cast<double>(q.pairs);
  q.expected_overlap_sq = ov / static_cast<double>(q.pairs);
  q.correctness = correct;
  q.win_lb = correct - q.expected_td;
  return q;
}

Json NetAttackParams::to_json() const {
  return Json{{"delta_gap", delta_gap},
              {"gamma", gamma},
              {"net_size", net_size},
              {"eps_bad", eps_bad},
              {"failure_budget", failure_budget},
              {"iterations_required", iterations_required},
              {"iterations", iterations},
              {"reference_iterations", reference_iterations},
              {"lambda", lambda},
              {"tomography", tomography},
              {"perturbation", perturbation}};
}

NetAttack net_attack(const OwsgScheme& scheme, double delta_gap, const NetAttackOptions& options) {
  if (!(delta_gap > 0.0 && delta_gap < 1.0)) throw InvalidArgument("Delta must lie in (0, 1)");
  if (!(options.failure_budget > 0.0 && options.failure_budget < 1.0)) {
    throw InvalidArgument("failure budget must lie in (0, 1)");
  }
  if (options.perturbation_fraction < 0.0 || options.perturbation_fraction > 1.0) {
    throw InvalidArgument("perturbation fraction must lie in [0, 1]");
  }
  NetAttack attack;
  NetAttackParams& p = attack.params;
  p.delta_gap = delta_gap;
  p.gamma = delta_gap / 6.0;
  auto net = std::make_shared<EpsNet>(build_net(scheme.output_qubits(), p.gamma, options.net));
  p.net_size = static_cast<std::int64_t>(net->size());
  p.eps_bad = p.gamma / static_cast<double>(p.net_size);
  p.failure_budget = options.failure_budget;
  p.iterations_required = static_cast<std::int64_t>(
      std::ceil(std::log2(1.0 / options.failure_budget) / p.eps_bad));
  p.iterations = options.max_iterations ? std::min(*options.max_iterations, p.iterations_required)
                                        : p.iterations_required;
  const double d = static_cast<double>(net->dim);
  const double c_impl = net->construction.at("c_impl").get<double>();
  p.reference_iterations = std::pow(c_impl / p.gamma, d * d) * std::log2(options.lambda) / p.gamma;
  p.lambda = options.lambda;
  p.tomography = to_string(options.tomography);
  p.perturbation =
      options.tomography == AccessMode::Oracle ? options.perturbation_fraction * p.gamma : 0.0;
  attack.net = net;

  TomographyConfig config;
  config.delta = p.gamma;
  config.beta = options.beta;
  config.lambda = options.lambda;
  config.shot_ceiling = options.shot_ceiling;
  const AccessMode mode = options.tomography;
  const double gamma = p.gamma;
  const double perturbation = p.perturbation;
  const std::int64_t iterations = p.iterations;

  attack.adversary = [&scheme, net, config, mode, gamma, perturbation, iterations](
                         TargetAccess& access, Rng& rng) -> std::optional<Key> {
    auto estimate_of = [&](const DensityMatrix& rho, Rng& r) {
      return mode == AccessMode::Oracle ? tomography_oracle(rho, gamma, perturbation, r).estimate
                                        : tomography_sampled(rho, config, r).estimate;
    };
    Rng target_rng = rng.child("target");
    const HermitianMatrix m = mode == AccessMode::Oracle
                                  ? estimate_of(access.exact_state(), target_rng)
                                  : tomography_sampled(access, config, target_rng).estimate;
    const std::vector<std::size_t> candidates = net->within(m.matrix(), gamma);
    if (candidates.empty()) return std::nullopt;

    Rng loop = rng.child("iterations");
    for (std::int64_t i = 0; i < iterations; ++i) {
      Rng it = loop.child(static_cast<std::uint64_t>(i));
      Rng key_rng = it.child("key");
      Rng tomo_rng = it.child("tomography");
      const Key k = scheme.sample_key(key_rng);
      const HermitianMatrix mi = estimate_of(scheme.state(k), tomo_rng);
      for (std::size_t idx : candidates) {
        if (half_trace_norm(mi.matrix() - net->elements[idx].matrix()) <= gamma) return k;
      }
    }
    return std::nullopt;
  };
  return attack;
}

}  // namespace qclab
