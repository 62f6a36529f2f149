#pragma once

#include <cstdint>
#include <vector>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

/// Finite set of density matrices such that every state of the dimension lies
/// within trace distance gamma of some element.
///
/// Elements come from a grid over the non-identity Pauli coordinates
/// c_P = Tr(P rho): every grid point X = (I + sum c_P P)/d that is close enough
/// to the state set is projected onto it (Frobenius-nearest density matrix).
/// With grid step s = 3 gamma / sqrt(d^2 - 1) each state is within 3 gamma / 4 of
/// a projected point, and greedy deduplication at gamma / 4 keeps the total
/// covering radius at gamma.
struct EpsNet {
  double gamma = 0.0;
  int num_qubits = 0;
  std::int64_t dim = 0;
  std::vector<DensityMatrix> elements;
  /// Non-identity Pauli coordinates of each element, used to prefilter
  /// distance queries via sqrt(1/d) |dc| / 2 <= TD <= |dc| / 2.
  std::vector<Eigen::VectorXd> coordinates;
  /// Grid parameters, constants and counts.
  Json construction = Json::object();

  std::size_t size() const noexcept { return elements.size(); }
  /// Indices (ascending) of elements within trace distance `radius` of m.
  std::vector<std::size_t> within(const CMatrix& m, double radius) const;
  /// Smallest trace distance from m to the net.
  double min_distance(const CMatrix& m) const;
};

struct NetOptions {
  std::int64_t max_elements = 200'000;
};

/// Deterministic; throws NetTooLarge when the grid would exceed max_elements.
EpsNet build_net(int num_qubits, double gamma, const NetOptions& options = {});

/// Frobenius-nearest density matrix to a Hermitian matrix (eigenvalues
/// projected onto the probability simplex).
DensityMatrix project_to_states(const CMatrix& hermitian);

struct NetCoverage {
  std::int64_t samples = 0;
  std::int64_t covered = 0;
  double fraction = 0.0;
  double max_distance = 0.0;
  Json to_json() const;
};

/// Samples random mixed states (or Haar pure states) and counts those within
/// gamma of the net.
NetCoverage audit_net_covering(const EpsNet& net, std::int64_t samples, Rng& rng,
                               bool pure_samples = false);

}  // namespace qclab
