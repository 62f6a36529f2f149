#include "qclab/core/pauli.hpp"

#include <bit>

#include "qclab/core/error.hpp"

namespace qclab {

PauliString PauliString::from_index(std::uint64_t index, int num_qubits) {
  const auto dim = static_cast<std::uint64_t>(dimension_of(num_qubits));
  if (index >= dim * dim) throw IndexOutOfRange("Pauli index out of range");
  return {index / dim, index % dim, num_qubits};
}

Complex PauliString::coefficient(std::uint64_t k) const {
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ys = std::popcount(x & z);
  const int sign = std::popcount(k & z) & 1;
  return kPowers[(ys + 2 * sign) % 4];
}

std::string PauliString::label() const {
  std::string s;
  for (int q = 0; q < num_qubits; ++q) {
    const int shift = num_qubits - 1 - q;
    const bool bx = (x >> shift) & 1U;
    const bool bz = (z >> shift) & 1U;
    s += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return s;
}

CMatrix pauli_matrix(const PauliString& p) {
  const auto dim = dimension_of(p.num_qubits);
  CMatrix m = CMatrix::Zero(dim, dim);
  add_pauli(m, p, 1.0);
  return m;
}

double pauli_expectation(const CMatrix& m, const PauliString& p) {
  const auto dim = dimension_of(p.num_qubits);
  if (m.rows() != dim) throw DimensionMismatch("Pauli string and matrix differ in size");
  // Tr(P m) = sum_k <k xor x| ... : P|k> = c_k |k xor x>, so Tr(P m) = sum_k c_k m(k, k xor x).
  Complex acc = 0.0;
  for (std::int64_t k = 0; k < dim; ++k) {
    acc += p.coefficient(static_cast<std::uint64_t>(k)) * m(k, static_cast<std::int64_t>(k ^ p.x));
  }
  return acc.real();
}

void add_pauli(CMatrix& m, const PauliString& p, double scale) {
  const auto dim = dimension_of(p.num_qubits);
  for (std::int64_t k = 0; k < dim; ++k) {
    m(static_cast<std::int64_t>(k ^ p.x), k) += scale * p.coefficient(static_cast<std::uint64_t>(k));
  }
}

Projector pauli_plus_projector(const PauliString& p) {
  const auto dim = dimension_of(p.num_qubits);
  CMatrix m = 0.5 * CMatrix::Identity(dim, dim);
  add_pauli(m, p, 0.5);
  return Projector(unchecked, std::move(m));
}

Eigen::VectorXd pauli_coordinates(const CMatrix& m) {
  const int n = qubits_of_dimension(m.rows());
  const auto count = m.rows() * m.rows();
  Eigen::VectorXd c(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    c[i] = pauli_expectation(m, PauliString::from_index(static_cast<std::uint64_t>(i), n));
  }
  return c;
}

CMatrix from_pauli_coordinates(const Eigen::VectorXd& coords, int num_qubits) {
  const auto dim = dimension_of(num_qubits);
  if (coords.size() != dim * dim) throw DimensionMismatch("wrong number of Pauli coordinates");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0.0) {
      add_pauli(m, PauliString::from_index(static_cast<std::uint64_t>(i), num_qubits),
                coords[i] / static_cast<double>(dim));
    }
  }
  return m;
}

}  // namespace qclab
