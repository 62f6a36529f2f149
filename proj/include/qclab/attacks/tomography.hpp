#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/owsg.hpp"

namespace qclab {

struct TomographyEstimate {
  HermitianMatrix estimate;
  double delta_target = 0.0;
  std::int64_t copies_used = 0;
  std::string mode;
  std::int64_t shots_per_pauli = 0;
  /// 144 lambda d^4 / delta^2, logged for comparison with the executed budget.
  double reference_copies = 0.0;
  /// Trace norm of the injected oracle perturbation.
  double perturbation = 0.0;
};

struct TomographyConfig {
  double delta = 0.1;
  double beta = 0.05;
  double lambda = 16.0;
  /// Upper limit on shots * (d^2 - 1).
  std::int64_t shot_ceiling = 100'000'000;
};

/// ceil((2 d^4 / delta^2) ln(2 d^2 / beta)).
std::int64_t tomography_shots_per_pauli(std::int64_t dim, double delta, double beta);
/// 144 lambda d^4 / delta^2.
double reference_tomography_copies(double lambda, std::int64_t dim, double delta);

/// Returns the number of "inside" outcomes when measuring `shots` copies.
using MeasurementOracle = std::function<std::int64_t(const Projector&, std::int64_t, Rng&)>;

/// Pauli tomography: each non-identity Pauli P is estimated from shots of
/// {(I+P)/2, (I-P)/2}; M = (1/d) sum_P mu_P P, symmetrised. Throws
/// BudgetOverflow when the total shot count would exceed the ceiling.
TomographyEstimate tomography_sampled(int num_qubits, const MeasurementOracle& oracle,
                                      const TomographyConfig& config, Rng& rng);
TomographyEstimate tomography_sampled(const DensityMatrix& rho, const TomographyConfig& config,
                                      Rng& rng);
TomographyEstimate tomography_sampled(TargetAccess& access, const TomographyConfig& config,
                                      Rng& rng);

/// Rescales a nonzero Hermitian direction to trace norm `norm`.
CMatrix scale_to_trace_norm(const CMatrix& direction, double norm);

/// rho + E with ||E||_tr = perturbation (random Hermitian direction).
TomographyEstimate tomography_oracle(const DensityMatrix& rho, double delta, double perturbation,
                                     Rng& rng);
/// rho + E with E the given direction scaled to trace norm `perturbation`.
TomographyEstimate tomography_oracle(const DensityMatrix& rho, double delta,
                                     const CMatrix& direction, double perturbation);

}  // namespace qclab
