#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "qclab/core/state.hpp"

namespace qclab {

class Circuit;

namespace gate {

struct Hadamard {
  int qubit;
};

struct PauliZ {
  int qubit;
};

/// Classical reversible map on the full computational basis: |i> -> |map[i]>.
struct BasisPermutation {
  std::vector<std::uint64_t> map;
};

/// Reorders qubits: new qubit j is old qubit order[j].
struct QubitPermutation {
  std::vector<int> order;
};

/// Explicit unitary on the full register.
struct Dense {
  CMatrix unitary;
};

/// |0><0| (x) when0 + |1><1| (x) when1 with the control on qubit 0.
struct Multiplexer {
  std::shared_ptr<const Circuit> when0;
  std::shared_ptr<const Circuit> when1;
};

}  // namespace gate

using Gate = std::variant<gate::Hadamard, gate::PauliZ, gate::BasisPermutation,
                          gate::QubitPermutation, gate::Dense, gate::Multiplexer>;

/// A unitary described as a sequence of gates on `num_qubits` qubits.
///
/// Each gate is validated on insertion (permutations must be bijections,
/// dense blocks unitary within 1e-8), so every Circuit is unitary by
/// construction. Applying to a 2^n amplitude vector never materialises the
/// full 2^n x 2^n matrix.
class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  Circuit& hadamard(int qubit);
  Circuit& pauli_z(int qubit);
  Circuit& permute_basis(std::vector<std::uint64_t> map);
  Circuit& permute_qubits(std::vector<int> order);
  Circuit& dense(CMatrix unitary);
  Circuit& multiplex(Circuit when0, Circuit when1);

  void apply(CVector& amplitudes) const;
  void apply_adjoint(CVector& amplitudes) const;

  PureState apply(const PureState& psi) const;
  PureState apply_adjoint(const PureState& psi) const;
  /// Circuit applied to |0...0>.
  PureState prepare() const;

  /// Full matrix, column i = C|i>. Only for small registers.
  CMatrix to_matrix() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qclab
