#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "qclab/attacks/net.hpp"
#include "qclab/attacks/tomography.hpp"
#include "qclab/primitives/owsg.hpp"

namespace qclab {

/// Ignores its copies and outputs a fresh key from KeyGen.
Adversary trivial_adversary(const OwsgScheme& scheme);

/// Exact trivial-adversary win probability for a uniform-key pure scheme,
/// computed through the verifier and independently from the Gram matrix of
/// the key states.
struct TrivialWinLaw {
  double by_verifier = 0.0;
  double by_gram = 0.0;
  /// 2^{-m}.
  double floor = 0.0;
  std::uint64_t keys = 0;
  Json to_json() const;
};
TrivialWinLaw trivial_win_law(const OwsgScheme& scheme);

struct PairwiseQuantities {
  /// E_{k,k'} TD(phi_k, phi_k').
  double expected_td = 0.0;
  /// E_{k,k'} |<phi_k|phi_k'>|^2.
  double expected_overlap_sq = 0.0;
  /// sqrt(1 - 2^{-m}).
  double bound = 0.0;
  /// E_k Ver(k, phi_k).
  double correctness = 0.0;
  /// correctness - expected_td.
  double win_lb = 0.0;
  /// 2^{-m-1}.
  double floor = 0.0;
  bool enumerated = false;
  std::int64_t pairs = 0;
  Json to_json() const;
};

/// Enumerates all key pairs when key_bits <= max_enumerate_bits, otherwise
/// averages over `samples` sampled pairs.
PairwiseQuantities expected_pairwise_quantities(const OwsgScheme& scheme, Rng& rng,
                                                int max_enumerate_bits = 10,
                                                std::int64_t samples = 100'000);

struct NetAttackOptions {
  /// Probability that T iterations all miss a net point that is hit with
  /// probability eps_bad each.
  double failure_budget = 1e-6;
  /// Caps the iteration count (the uncapped value is still recorded).
  std::optional<std::int64_t> max_iterations;
  /// Only used in the logged reference iteration count (C/gamma)^{d^2} log2(lambda)/gamma.
  double lambda = 16.0;
  AccessMode tomography = AccessMode::Oracle;
  /// Oracle mode: trace norm of the perturbation, as a fraction of gamma.
  double perturbation_fraction = 0.0;
  /// Sampled mode: confidence of each tomography run.
  double beta = 0.01;
  std::int64_t shot_ceiling = 100'000'000;
  NetOptions net;
};

struct NetAttackParams {
  double delta_gap = 0.0;
  double gamma = 0.0;
  std::int64_t net_size = 0;
  double eps_bad = 0.0;
  double failure_budget = 0.0;
  /// ceil(|Net| log2(1/failure_budget) / gamma).
  std::int64_t iterations_required = 0;
  std::int64_t iterations = 0;
  /// (C/gamma)^{d^2} log2(lambda) / gamma with C the net's implementation constant.
  double reference_iterations = 0.0;
  double lambda = 0.0;
  std::string tomography;
  double perturbation = 0.0;
  Json to_json() const;
};

struct NetAttack {
  NetAttackParams params;
  std::shared_ptr<const EpsNet> net;
  Adversary adversary;
};

/// Tomography + net adversary with gamma = Delta / 6. For each trial: M is a
/// tomography estimate of the target, cand is the set of net points within gamma
/// of M (ascending index). Iteration i samples k_i, estimates phi_{k_i} itself
/// and outputs k_i if some point of cand is within gamma of the estimate.
/// Returns bottom if cand is empty or after the last iteration.
NetAttack net_attack(const OwsgScheme& scheme, double delta_gap,
                     const NetAttackOptions& options = {});

}  // namespace qclab
