#include "qclab/attacks/tomography.hpp"

#include <cmath>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/core/pauli.hpp"

namespace qclab {

std::int64_t tomography_shots_per_pauli(std::int64_t dim, double delta, double beta) {
  if (!(delta > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("tomography needs delta > 0 and beta in (0, 1)");
  }
  const double d = static_cast<double>(dim);
  return static_cast<std::int64_t>(
      std::ceil(2.0 * std::pow(d, 4) / (delta * delta) * std::log(2.0 * d * d / beta)));
}

double reference_tomography_copies(double lambda, std::int64_t dim, double delta) {
  const double d = static_cast<double>(dim);
  return 144.0 * lambda * d * d * d * d / (delta * delta);
}

TomographyEstimate tomography_sampled(int num_qubits, const MeasurementOracle& oracle,
                                      const TomographyConfig& config, Rng& rng) {
  const auto dim = dimension_of(num_qubits);
  const std::int64_t shots = tomography_shots_per_pauli(dim, config.delta, config.beta);
  const std::int64_t paulis = dim * dim - 1;
  if (static_cast<double>(shots) * static_cast<double>(paulis) >
      static_cast<double>(config.shot_ceiling)) {
    throw BudgetOverflow("tomography needs " + std::to_string(shots) + " shots for each of " +
                         std::to_string(paulis) + " Paulis, above the ceiling of " +
                         std::to_string(config.shot_ceiling));
  }
  CMatrix m = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  for (std::int64_t i = 1; i <= paulis; ++i) {
    const auto p = PauliString::from_index(static_cast<std::uint64_t>(i), num_qubits);
    Rng pauli_rng = rng.child(static_cast<std::uint64_t>(i));
    const std::int64_t inside = oracle(pauli_plus_projector(p), shots, pauli_rng);
    const double mu = 2.0 * static_cast<double>(inside) / static_cast<double>(shots) - 1.0;
    add_pauli(m, p, mu / static_cast<double>(dim));
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return {HermitianMatrix(unchecked, std::move(m)),
          config.delta,
          shots * paulis,
          "sampled",
          shots,
          reference_tomography_copies(config.lambda, dim, config.delta),
          0.0};
}

TomographyEstimate tomography_sampled(const DensityMatrix& rho, const TomographyConfig& config,
                                      Rng& rng) {
  return tomography_sampled(
      rho.num_qubits(),
      [&rho](const Projector& p, std::int64_t shots, Rng& r) {
        return measure_repeated(rho, p, shots, r);
      },
      config, rng);
}

TomographyEstimate tomography_sampled(TargetAccess& access, const TomographyConfig& config,
                                      Rng& rng) {
  return tomography_sampled(
      access.num_qubits(),
      [&access](const Projector& p, std::int64_t shots, Rng& r) {
        return access.measure_copies(p, shots, r);
      },
      config, rng);
}

CMatrix scale_to_trace_norm(const CMatrix& direction, double norm) {
  const CMatrix h = 0.5 * (direction + direction.adjoint());
  const double current = half_trace_norm(h);
  if (!(current > 0.0)) throw InvalidArgument("perturbation direction is zero");
  return h * (norm / current);
}

TomographyEstimate tomography_oracle(const DensityMatrix& rho, double delta,
                                     const CMatrix& direction, double perturbation) {
  if (perturbation < 0.0 || perturbation > delta) {
    throw InvalidArgument("oracle perturbation must lie in [0, delta]");
  }
  CMatrix m = rho.matrix();
  if (perturbation > 0.0) m += scale_to_trace_norm(direction, perturbation);
  return {HermitianMatrix(unchecked, std::move(m)), delta, 0, "oracle", 0, 0.0, perturbation};
}

TomographyEstimate tomography_oracle(const DensityMatrix& rho, double delta, double perturbation,
                                     Rng& rng) {
  if (perturbation == 0.0) {
    return tomography_oracle(rho, delta, CMatrix::Zero(rho.dim(), rho.dim()), 0.0);
  }
  return tomography_oracle(rho, delta, random_hermitian(rho.dim(), rng), perturbation);
}

}  // namespace qclab
