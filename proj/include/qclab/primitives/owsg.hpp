#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qclab/core/ops.hpp"
#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

using Key = std::uint64_t;

/// Keyed state generator with a verifier: (KeyGen, StateGen, Ver).
///
/// Schemes built with a pure generator use the projection verifier
/// Ver(k', sigma) = <phi_k'| sigma |phi_k'>. Pure schemes keep their states as
/// vectors so that 12-qubit outputs never need a 4096 x 4096 matrix.
class OwsgScheme {
 public:
  using PureGen = std::function<PureState(Key)>;
  using MixedGen = std::function<DensityMatrix(Key)>;
  using KeyGen = std::function<Key(Rng&)>;
  using Verifier = std::function<double(Key, const DensityMatrix&)>;

  static OwsgScheme with_projection_verifier(std::string name, int key_bits, int output_qubits,
                                             PureGen gen, Json metadata = Json::object());
  static OwsgScheme general(std::string name, int key_bits, int output_qubits, MixedGen gen,
                            Verifier verifier, Json metadata = Json::object());

  const std::string& name() const noexcept { return name_; }
  int key_bits() const noexcept { return key_bits_; }
  int output_qubits() const noexcept { return output_qubits_; }
  bool is_pure() const noexcept { return static_cast<bool>(pure_gen_); }
  const Json& metadata() const noexcept { return metadata_; }
  Json& metadata() noexcept { return metadata_; }

  /// Replaces the default uniform n-bit key sampler.
  void set_key_gen(KeyGen gen) { key_gen_ = std::move(gen); }
  bool has_uniform_keys() const noexcept { return !key_gen_; }
  Key sample_key(Rng& rng) const;
  /// 2^key_bits.
  std::uint64_t key_count() const;

  /// Throws InvalidArgument for schemes with mixed outputs.
  PureState pure_state(Key k) const;
  DensityMatrix state(Key k) const;

  double verify(Key candidate, const PureState& copy) const;
  double verify(Key candidate, const DensityMatrix& copy) const;

 private:
  OwsgScheme() = default;

  std::string name_;
  int key_bits_ = 0;
  int output_qubits_ = 0;
  PureGen pure_gen_;
  MixedGen mixed_gen_;
  Verifier verifier_;
  KeyGen key_gen_;
  Json metadata_;
};

enum class AccessMode { Oracle, Sampled };
enum class Scoring { Exact, Sampled };

std::string to_string(AccessMode mode);
std::string to_string(Scoring scoring);

/// The adversary's view of phi_k. In oracle mode the exact state is
/// available; in sampled mode the adversary may only measure copies (at most
/// `copies` of them) or request the literal joint state phi_k^{(x)t}.
class TargetAccess {
 public:
  TargetAccess(const OwsgScheme& scheme, Key key, AccessMode mode, std::int64_t copies);

  AccessMode mode() const noexcept { return mode_; }
  const OwsgScheme& scheme() const noexcept { return *scheme_; }
  int num_qubits() const noexcept { return scheme_->output_qubits(); }
  std::int64_t copies() const noexcept { return copies_; }
  std::int64_t copies_used() const noexcept { return used_; }

  /// Oracle mode only; throws AdversaryFailure otherwise.
  DensityMatrix exact_state() const;

  /// Measures `shots` fresh copies with {P, I - P}; returns the number of
  /// outcomes inside P. Throws AdversaryFailure when the copy budget runs out.
  std::int64_t measure_copies(const Projector& projector, std::int64_t shots, Rng& rng);

  /// phi_k^{(x)copies}; subject to the qubit cap.
  DensityMatrix joint_state() const;

 private:
  const OwsgScheme* scheme_;
  Key key_;
  AccessMode mode_;
  std::int64_t copies_;
  std::int64_t used_ = 0;
};

/// Returns a candidate key, or std::nullopt for "bottom" (giving up).
using Adversary = std::function<std::optional<Key>(TargetAccess&, Rng&)>;

struct OnewaynessOptions {
  std::int64_t trials = 1000;
  std::int64_t copies = 1;
  AccessMode access = AccessMode::Oracle;
  Scoring scoring = Scoring::Exact;
  /// Record TD(phi_k, phi_k') for every non-bottom answer.
  bool record_td = false;
  bool keep_log = true;
};

/// Plays the one-wayness game: k <- KeyGen, k' <- A(phi_k^{(x)t}), score
/// Ver(k', phi_k). Trial i runs on rng.child(i). An AdversaryFailure counts as
/// a loss and increments `failures`.
GameReport run_onewayness_game(const OwsgScheme& scheme, const Adversary& adversary,
                               const OnewaynessOptions& options, Rng& rng);

}  // namespace qclab
