#include "qclab/core/state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qclab/core/error.hpp"

namespace qclab {

std::int64_t dimension_of(int num_qubits) {
  if (num_qubits < 0 || num_qubits > 62) {
    throw InvalidArgument("qubit count out of range: " + std::to_string(num_qubits));
  }
  return std::int64_t{1} << num_qubits;
}

int qubits_of_dimension(std::int64_t dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) {
    throw DimensionMismatch("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::int64_t{1} << n) < dim) ++n;
  return n;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// ---- PureState -------------------------------------------------------------

PureState::PureState(CVector amplitudes)
    : num_qubits_(qubits_of_dimension(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kEps) {
    throw InvalidState("state vector has squared norm " + std::to_string(norm2));
  }
}

PureState::PureState(Unchecked, CVector amplitudes)
    : num_qubits_(qubits_of_dimension(amplitudes.size())), amplitudes_(std::move(amplitudes)) {}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
  const auto dim = dimension_of(num_qubits);
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw IndexOutOfRange("basis index " + std::to_string(index) + " outside dimension " +
                          std::to_string(dim));
  }
  CVector v = CVector::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(unchecked, std::move(v));
}

PureState PureState::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw InvalidState("cannot normalise the zero vector");
  amplitudes /= norm;
  return PureState(unchecked, std::move(amplitudes));
}

// ---- DensityMatrix ---------------------------------------------------------

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + " must be square");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix) : num_qubits_(0), matrix_(std::move(matrix)) {
  require_square(matrix_, "density matrix");
  num_qubits_ = qubits_of_dimension(matrix_.rows());
  if (!is_hermitian(matrix_)) throw InvalidState("density matrix is not Hermitian");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kEps) {
    throw InvalidState("density matrix has trace " + std::to_string(tr));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kEps) {
    throw InvalidState("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(Unchecked, CMatrix matrix) : num_qubits_(0), matrix_(std::move(matrix)) {
  require_square(matrix_, "density matrix");
  num_qubits_ = qubits_of_dimension(matrix_.rows());
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return DensityMatrix(unchecked, a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto dim = dimension_of(num_qubits);
  return DensityMatrix(unchecked, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& probabilities) {
  if (probabilities.size() == 0) throw InvalidArgument("empty probability vector");
  if (probabilities.minCoeff() < -kEps || std::abs(probabilities.sum() - 1.0) > kEps) {
    throw InvalidState("diagonal entries are not a probability vector");
  }
  return DensityMatrix(unchecked, probabilities.cast<Complex>().asDiagonal());
}

// ---- HermitianMatrix -------------------------------------------------------

HermitianMatrix::HermitianMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "Hermitian matrix");
  if (!is_hermitian(matrix_)) throw NotHermitian("matrix is not Hermitian within tolerance");
}

HermitianMatrix::HermitianMatrix(Unchecked, CMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "Hermitian matrix");
}

// ---- Projector -------------------------------------------------------------

Projector::Projector(CMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "projector");
  if (!is_hermitian(matrix_)) throw NotHermitian("projector is not Hermitian");
  if (max_abs(matrix_ * matrix_ - matrix_) > kEigEps) {
    throw InvalidState("projector is not idempotent");
  }
}

Projector::Projector(Unchecked, CMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "projector");
}

Projector Projector::identity(std::int64_t dim) {
  return Projector(unchecked, CMatrix::Identity(dim, dim));
}

Projector Projector::zero(std::int64_t dim) { return Projector(unchecked, CMatrix::Zero(dim, dim)); }

Projector Projector::onto(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return Projector(unchecked, a * a.adjoint());
}

Projector Projector::complement() const {
  return Projector(unchecked, CMatrix::Identity(dim(), dim()) - matrix_);
}

}  // namespace qclab
