#include "qclab/primitives/owsg.hpp"

#include <algorithm>
#include <cmath>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"

namespace qclab {

OwsgScheme OwsgScheme::with_projection_verifier(std::string name, int key_bits, int output_qubits,
                                                PureGen gen, Json metadata) {
  if (key_bits < 0 || key_bits > 63) throw InvalidArgument("key_bits must lie in [0, 63]");
  OwsgScheme s;
  s.name_ = std::move(name);
  s.key_bits_ = key_bits;
  s.output_qubits_ = output_qubits;
  s.pure_gen_ = std::move(gen);
  s.metadata_ = std::move(metadata);
  s.metadata_["verifier"] = "projection";
  return s;
}

OwsgScheme OwsgScheme::general(std::string name, int key_bits, int output_qubits, MixedGen gen,
                               Verifier verifier, Json metadata) {
  if (key_bits < 0 || key_bits > 63) throw InvalidArgument("key_bits must lie in [0, 63]");
  OwsgScheme s;
  s.name_ = std::move(name);
  s.key_bits_ = key_bits;
  s.output_qubits_ = output_qubits;
  s.mixed_gen_ = std::move(gen);
  s.verifier_ = std::move(verifier);
  s.metadata_ = std::move(metadata);
  return s;
}

Key OwsgScheme::sample_key(Rng& rng) const {
  return key_gen_ ? key_gen_(rng) : rng.bits(key_bits_);
}

std::uint64_t OwsgScheme::key_count() const { return std::uint64_t{1} << key_bits_; }

PureState OwsgScheme::pure_state(Key k) const {
  if (!pure_gen_) throw InvalidArgument("scheme '" + name_ + "' has mixed outputs");
  return pure_gen_(k);
}

DensityMatrix OwsgScheme::state(Key k) const {
  if (pure_gen_) return DensityMatrix::from_pure(pure_gen_(k));
  return mixed_gen_(k);
}

double OwsgScheme::verify(Key candidate, const PureState& copy) const {
  if (pure_gen_) return overlap_squared(pure_gen_(candidate), copy);
  return verify(candidate, DensityMatrix::from_pure(copy));
}

double OwsgScheme::verify(Key candidate, const DensityMatrix& copy) const {
  if (pure_gen_) {
    const PureState phi = pure_gen_(candidate);
    if (phi.dim() != copy.dim()) throw DimensionMismatch("verifier input has the wrong size");
    const double p = phi.amplitudes().dot(copy.matrix() * phi.amplitudes()).real();
    return std::clamp(p, 0.0, 1.0);
  }
  return std::clamp(verifier_(candidate, copy), 0.0, 1.0);
}

std::string to_string(AccessMode mode) { return mode == AccessMode::Oracle ? "oracle" : "sampled"; }
std::string to_string(Scoring scoring) { return scoring == Scoring::Exact ? "exact" : "sampled"; }

// ---- TargetAccess ----------------------------------------------------------

TargetAccess::TargetAccess(const OwsgScheme& scheme, Key key, AccessMode mode,
                           std::int64_t copies)
    : scheme_(&scheme), key_(key), mode_(mode), copies_(copies) {}

DensityMatrix TargetAccess::exact_state() const {
  if (mode_ != AccessMode::Oracle) {
    throw AdversaryFailure("exact state requested in sampled access mode");
  }
  return scheme_->state(key_);
}

std::int64_t TargetAccess::measure_copies(const Projector& projector, std::int64_t shots,
                                          Rng& rng) {
  if (shots < 0) throw InvalidArgument("negative shot count");
  if (mode_ == AccessMode::Sampled && used_ + shots > copies_) {
    throw AdversaryFailure("copy budget of " + std::to_string(copies_) + " exhausted");
  }
  used_ += shots;
  return measure_repeated(scheme_->state(key_), projector, shots, rng);
}

DensityMatrix TargetAccess::joint_state() const {
  require_within_cap(num_qubits() * static_cast<int>(copies_), "joint copies");
  return tensor_power(scheme_->state(key_), static_cast<int>(copies_));
}

// ---- game ------------------------------------------------------------------

GameReport run_onewayness_game(const OwsgScheme& scheme, const Adversary& adversary,
                               const OnewaynessOptions& options, Rng& rng) {
  if (options.trials < 1) throw InvalidArgument("the game needs at least one trial");
  GameReport report;
  report.game = "onewayness";
  report.access_mode = to_string(options.access);
  report.scoring = to_string(options.scoring);
  report.trials = options.trials;
  double wins = 0.0;

  for (std::int64_t i = 0; i < options.trials; ++i) {
    Rng trial_rng = rng.child(static_cast<std::uint64_t>(i));
    TrialRecord rec;
    rec.trial = i;
    rec.seed = trial_rng.seed();
    rec.mode = report.access_mode;

    Rng key_rng = trial_rng.child("key");
    Rng adv_rng = trial_rng.child("adversary");
    Rng score_rng = trial_rng.child("score");
    const Key k = scheme.sample_key(key_rng);
    TargetAccess access(scheme, k, options.access, options.copies);

    std::optional<Key> answer;
    try {
      answer = adversary(access, adv_rng);
    } catch (const AdversaryFailure&) {
      ++report.failures;
      rec.bot = true;
      if (options.keep_log) report.log.push_back(rec);
      continue;
    }

    if (!answer) {
      ++report.bot_count;
      rec.bot = true;
    } else {
      rec.recovered_key = *answer;
      const double p = scheme.is_pure() ? scheme.verify(*answer, scheme.pure_state(k))
                                        : scheme.verify(*answer, scheme.state(k));
      rec.outcome = options.scoring == Scoring::Exact ? p : (score_rng.bernoulli(p) ? 1.0 : 0.0);
      if (options.record_td) {
        rec.td_to_target = scheme.is_pure()
                               ? trace_distance(scheme.pure_state(k), scheme.pure_state(*answer))
                               : trace_distance(scheme.state(k), scheme.state(*answer));
      }
      wins += rec.outcome;
    }
    if (options.keep_log) report.log.push_back(rec);
  }

  const auto n = static_cast<double>(options.trials);
  report.wins = wins;
  report.estimate = wins / n;
  report.sigma = std::sqrt(std::max(0.0, report.estimate * (1.0 - report.estimate)) / n);
  report.ci95_halfwidth = 1.96 * report.sigma;
  return report;
}

}  // namespace qclab
