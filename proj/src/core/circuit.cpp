#include "qclab/core/circuit.hpp"

#include <algorithm>
#include <string>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"

namespace qclab {
namespace {

void apply_hadamard(CVector& v, int n, int qubit) {
  const std::int64_t stride = std::int64_t{1} << (n - 1 - qubit);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::int64_t i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const Complex a = v[i];
    const Complex b = v[i | stride];
    v[i] = h * (a + b);
    v[i | stride] = h * (a - b);
  }
}

void apply_pauli_z(CVector& v, int n, int qubit) {
  const std::int64_t stride = std::int64_t{1} << (n - 1 - qubit);
  for (std::int64_t i = 0; i < v.size(); ++i) {
    if (i & stride) v[i] = -v[i];
  }
}

std::int64_t permuted_index(std::int64_t i, int n, const std::vector<int>& order) {
  std::int64_t j = 0;
  for (int q = 0; q < n; ++q) {
    if ((i >> (n - 1 - order[q])) & 1) j |= std::int64_t{1} << (n - 1 - q);
  }
  return j;
}

void apply_gate(const Gate& g, CVector& v, int n, bool adjoint) {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gate::Hadamard>) {
          apply_hadamard(v, n, op.qubit);
        } else if constexpr (std::is_same_v<T, gate::PauliZ>) {
          apply_pauli_z(v, n, op.qubit);
        } else if constexpr (std::is_same_v<T, gate::BasisPermutation>) {
          CVector out(v.size());
          for (std::int64_t i = 0; i < v.size(); ++i) {
            if (adjoint) {
              out[i] = v[static_cast<std::int64_t>(op.map[i])];
            } else {
              out[static_cast<std::int64_t>(op.map[i])] = v[i];
            }
          }
          v = std::move(out);
        } else if constexpr (std::is_same_v<T, gate::QubitPermutation>) {
          CVector out(v.size());
          for (std::int64_t i = 0; i < v.size(); ++i) {
            const std::int64_t j = permuted_index(i, n, op.order);
            if (adjoint) {
              out[i] = v[j];
            } else {
              out[j] = v[i];
            }
          }
          v = std::move(out);
        } else if constexpr (std::is_same_v<T, gate::Dense>) {
          v = adjoint ? CVector(op.unitary.adjoint() * v) : CVector(op.unitary * v);
        } else if constexpr (std::is_same_v<T, gate::Multiplexer>) {
          const std::int64_t half = v.size() / 2;
          CVector lo = v.head(half);
          CVector hi = v.tail(half);
          if (adjoint) {
            op.when0->apply_adjoint(lo);
            op.when1->apply_adjoint(hi);
          } else {
            op.when0->apply(lo);
            op.when1->apply(hi);
          }
          v.head(half) = lo;
          v.tail(half) = hi;
        }
      },
      g);
}

}  // namespace

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw InvalidArgument("circuit needs a nonnegative qubit count");
  require_within_cap(num_qubits, "circuit");
}

Circuit& Circuit::hadamard(int qubit) {
  if (qubit < 0 || qubit >= num_qubits_) throw IndexOutOfRange("hadamard target out of range");
  gates_.emplace_back(gate::Hadamard{qubit});
  return *this;
}

Circuit& Circuit::pauli_z(int qubit) {
  if (qubit < 0 || qubit >= num_qubits_) throw IndexOutOfRange("pauli_z target out of range");
  gates_.emplace_back(gate::PauliZ{qubit});
  return *this;
}

Circuit& Circuit::permute_basis(std::vector<std::uint64_t> map) {
  const auto dim = static_cast<std::size_t>(dimension_of(num_qubits_));
  if (map.size() != dim) throw DimensionMismatch("basis permutation has the wrong length");
  std::vector<bool> hit(dim, false);
  for (std::uint64_t image : map) {
    if (image >= dim || hit[image]) throw InvalidArgument("basis map is not a bijection");
    hit[image] = true;
  }
  gates_.emplace_back(gate::BasisPermutation{std::move(map)});
  return *this;
}

Circuit& Circuit::permute_qubits(std::vector<int> order) {
  if (static_cast<int>(order.size()) != num_qubits_) {
    throw DimensionMismatch("qubit permutation has the wrong length");
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int q = 0; q < num_qubits_; ++q) {
    if (sorted[q] != q) throw InvalidArgument("qubit order is not a permutation");
  }
  gates_.emplace_back(gate::QubitPermutation{std::move(order)});
  return *this;
}

Circuit& Circuit::dense(CMatrix unitary) {
  const auto dim = dimension_of(num_qubits_);
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw DimensionMismatch("dense gate has the wrong size");
  }
  const CMatrix gram = unitary.adjoint() * unitary;
  if (max_abs(gram - CMatrix::Identity(dim, dim)) > 1e-8) {
    throw InvalidArgument("dense gate is not unitary");
  }
  gates_.emplace_back(gate::Dense{std::move(unitary)});
  return *this;
}

Circuit& Circuit::multiplex(Circuit when0, Circuit when1) {
  if (num_qubits_ < 1 || when0.num_qubits() != num_qubits_ - 1 ||
      when1.num_qubits() != num_qubits_ - 1) {
    throw DimensionMismatch("multiplexed branches must act on all qubits but the control");
  }
  gates_.emplace_back(gate::Multiplexer{std::make_shared<const Circuit>(std::move(when0)),
                                        std::make_shared<const Circuit>(std::move(when1))});
  return *this;
}

void Circuit::apply(CVector& amplitudes) const {
  if (amplitudes.size() != dimension_of(num_qubits_)) {
    throw DimensionMismatch("circuit applied to a vector of the wrong size");
  }
  for (const Gate& g : gates_) apply_gate(g, amplitudes, num_qubits_, false);
}

void Circuit::apply_adjoint(CVector& amplitudes) const {
  if (amplitudes.size() != dimension_of(num_qubits_)) {
    throw DimensionMismatch("circuit applied to a vector of the wrong size");
  }
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    apply_gate(*it, amplitudes, num_qubits_, true);
  }
}

PureState Circuit::apply(const PureState& psi) const {
  CVector v = psi.amplitudes();
  apply(v);
  return PureState(unchecked, std::move(v));
}

PureState Circuit::apply_adjoint(const PureState& psi) const {
  CVector v = psi.amplitudes();
  apply_adjoint(v);
  return PureState(unchecked, std::move(v));
}

PureState Circuit::prepare() const { return apply(PureState::basis(num_qubits_, 0)); }

CMatrix Circuit::to_matrix() const {
  const auto dim = dimension_of(num_qubits_);
  CMatrix m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    CVector col = CVector::Zero(dim);
    col[i] = 1.0;
    apply(col);
    m.col(i) = col;
  }
  return m;
}

}  // namespace qclab
