#pragma once

#include <string>

#include "qclab/attacks/tomography.hpp"
#include "qclab/primitives/commitment.hpp"
#include "qclab/primitives/efi.hpp"

namespace qclab {

enum class EfiTomography {
  /// M_b = rho_b.
  Exact,
  /// M_0 = rho_0 - delta W, M_1 = rho_1 + delta W with ||delta W||_tr = delta,
  /// W chosen in the eigenbasis of rho_0 - rho_1 to pull negative eigenvalues
  /// up to zero so that the projector picks up wrong directions.
  Adversarial,
  /// Independent random Hermitian errors of trace norm exactly delta.
  Random,
  /// Pauli tomography from sampled copies.
  Sampled,
};

std::string to_string(EfiTomography mode);

struct EfiDistinguisherOptions {
  /// Polynomial stand-in: delta = 1 / (16 p). Needs TD(rho_0, rho_1) >= 1/p.
  double p = 1.0;
  EfiTomography tomography = EfiTomography::Exact;
  /// Build the estimates once instead of on every invocation.
  bool cached = false;
  TomographyConfig sampled;
};

struct EfiAttack {
  Distinguisher distinguisher;
  double delta = 0.0;
  double trace_distance = 0.0;
  /// TD - 8 delta.
  double guaranteed = 0.0;
  bool precondition_ok = true;
  Json to_json() const;
};

/// Estimates both arms, takes Pi = positive part of M_0 - M_1 and measures the
/// challenge with {Pi, I - Pi}; outcome Pi means "rho_0" (output 0).
EfiAttack efi_distinguisher(const EfiPair& pair, const EfiDistinguisherOptions& options, Rng& rng);

/// The delta W perturbation used by EfiTomography::Adversarial.
CMatrix adversarial_efi_perturbation(const EfiPair& pair, double delta);

struct SwapAnalysis {
  double purity0 = 0.0;
  double overlap01 = 0.0;
  /// (Tr rho_0^2 - Tr rho_0 rho_1) / 2.
  double predicted = 0.0;
  /// 2^{-|R|}: a marginal of a pure state on R (x) C has rank at most 2^{|R|}.
  double rank_bound = 0.0;
  double fidelity = 0.0;
  /// Probability of output 1 on each challenge.
  double accept0 = 0.0;
  double accept1 = 0.0;
  Json to_json() const;
};

struct SwapHidingAttack {
  Distinguisher distinguisher;
  SwapAnalysis analysis;
};

/// Swap test between a fresh honest commitment to 0 (C register) and the
/// challenge; outputs 1 when the test accepts.
SwapHidingAttack swap_hiding_attack(const CanonicalCommitment& c);

}  // namespace qclab
