#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qclab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities (norms, traces, hermiticity).
inline constexpr double kEps = 1e-9;
/// Tolerance for quantities derived from an eigendecomposition.
inline constexpr double kEigEps = 1e-7;

/// Marks constructors that skip invariant checks. Only used where the
/// producing operation guarantees the invariant (tensor, partial trace, ...).
struct Unchecked {};
inline constexpr Unchecked unchecked{};

std::int64_t dimension_of(int num_qubits);
/// Inverse of dimension_of; throws DimensionMismatch if dim is not 2^n.
int qubits_of_dimension(std::int64_t dim);

class PureState {
 public:
  /// Validates length 2^n and unit norm within kEps.
  explicit PureState(CVector amplitudes);
  PureState(Unchecked, CVector amplitudes);

  static PureState basis(int num_qubits, std::uint64_t index);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(CVector amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::int64_t dim() const noexcept { return amplitudes_.size(); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::int64_t i) const { return amplitudes_[i]; }

 private:
  int num_qubits_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and positive semidefiniteness.
  explicit DensityMatrix(CMatrix matrix);
  DensityMatrix(Unchecked, CMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int num_qubits);
  /// Diagonal state from a probability vector of length 2^n.
  static DensityMatrix diagonal(const Eigen::VectorXd& probabilities);

  int num_qubits() const noexcept { return num_qubits_; }
  std::int64_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  int num_qubits_;
  CMatrix matrix_;
};

/// Hermitian but not necessarily positive or unit trace (tomography output).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix matrix);
  HermitianMatrix(Unchecked, CMatrix matrix);

  std::int64_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  CMatrix matrix_;
};

class Projector {
 public:
  /// Validates hermiticity and idempotency within kEigEps.
  explicit Projector(CMatrix matrix);
  Projector(Unchecked, CMatrix matrix);

  static Projector identity(std::int64_t dim);
  static Projector zero(std::int64_t dim);
  static Projector onto(const PureState& psi);

  std::int64_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  Projector complement() const;

 private:
  CMatrix matrix_;
};

double max_abs(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kEps);

}  // namespace qclab
