#pragma once

#include <cstdint>
#include <string>

#include "qclab/core/state.hpp"

namespace qclab {

/// n-qubit Pauli string X^x Z^z with a factor i per qubit where both are set,
/// so each tensor factor is one of I, X, Y, Z. Index p in [0, 4^n) encodes
/// x = p / 2^n and z = p % 2^n; p = 0 is the identity.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int num_qubits = 0;

  static PauliString from_index(std::uint64_t index, int num_qubits);
  std::uint64_t index() const noexcept { return (x << num_qubits) | z; }
  /// c_k with P|k> = c_k |k xor x>.
  Complex coefficient(std::uint64_t k) const;
  /// Label such as "XIZY" (qubit 0 first).
  std::string label() const;
};

CMatrix pauli_matrix(const PauliString& p);
/// Re Tr(P m) without forming P.
double pauli_expectation(const CMatrix& m, const PauliString& p);
/// m += scale * P.
void add_pauli(CMatrix& m, const PauliString& p, double scale);
/// (I + P) / 2.
Projector pauli_plus_projector(const PauliString& p);

/// All d^2 coordinates Re Tr(P m), identity first.
Eigen::VectorXd pauli_coordinates(const CMatrix& m);
/// Inverse of pauli_coordinates: (1/d) sum_P c_P P.
CMatrix from_pauli_coordinates(const Eigen::VectorXd& coords, int num_qubits);

}  // namespace qclab
