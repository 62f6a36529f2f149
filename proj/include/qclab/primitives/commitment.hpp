#pragma once

#include <optional>
#include <string>

#include "qclab/core/circuit.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/efi.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

/// Canonical bit commitment (Q_0, Q_1) on registers R (reveal) then C
/// (commit): R occupies the most significant qubits.
class CanonicalCommitment {
 public:
  CanonicalCommitment(std::string name, int reveal_qubits, int commit_qubits, Circuit q0,
                      Circuit q1, Json metadata = Json::object());

  const std::string& name() const noexcept { return name_; }
  int reveal_qubits() const noexcept { return reveal_qubits_; }
  int commit_qubits() const noexcept { return commit_qubits_; }
  int total_qubits() const noexcept { return reveal_qubits_ + commit_qubits_; }
  const Circuit& unitary(int b) const;
  const Json& metadata() const noexcept { return metadata_; }

  /// |Psi_b> = Q_b |0...0>.
  PureState honest_state(int b) const;
  /// Tr_R |Psi_b><Psi_b|.
  DensityMatrix commit_marginal(int b) const;
  /// Tr_C |Psi_b><Psi_b|.
  DensityMatrix reveal_marginal(int b) const;

 private:
  std::string name_;
  int reveal_qubits_;
  int commit_qubits_;
  Circuit q0_;
  Circuit q1_;
  Json metadata_;
};

struct BindingOptimum {
  /// F(rho_0, rho_1) of the C-marginals.
  double fidelity = 0.0;
  /// (sum of singular values of A_0 A_1^dagger)^2, the Uhlmann route.
  double uhlmann = 0.0;
  /// Optimal unitary on R, present when |R| <= 6.
  std::optional<CMatrix> unitary;
};

/// Best success probability of opening an honest commitment to 0 as 1 by
/// acting on R alone.
BindingOptimum honest_binding_optimum(const CanonicalCommitment& c);

/// Applies U to the R register of |psi> on R (x) C.
PureState apply_on_reveal(const CMatrix& u, const PureState& joint, int reveal_qubits);

/// <0...0| Q_b^dagger sigma Q_b |0...0>.
double reveal_verify(const CanonicalCommitment& c, int b, const PureState& joint);
double reveal_verify(const CanonicalCommitment& c, int b, const DensityMatrix& joint);

/// The pair of C-marginals as a distinguishing problem.
EfiPair commit_marginals(const CanonicalCommitment& c);

GameReport hiding_advantage(const CanonicalCommitment& c, const Distinguisher& distinguisher,
                            std::int64_t trials_per_arm, Rng& rng,
                            Scoring scoring = Scoring::Sampled);

}  // namespace qclab
