#include "qclab/core/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"

namespace qclab {
namespace {

// Eigenvalues of a PSD operand below this are treated as round-off when
// taking square roots.
constexpr double kPsdFloor = 1e-13;

void require_same_dim(std::int64_t a, std::int64_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

std::vector<int> sorted_keep(std::span<const int> keep, int num_qubits) {
  std::vector<int> out(keep.begin(), keep.end());
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0 || out[i] >= num_qubits) {
      throw IndexOutOfRange("qubit index " + std::to_string(out[i]) + " outside register of " +
                            std::to_string(num_qubits));
    }
    if (i > 0 && out[i] == out[i - 1]) {
      throw IndexOutOfRange("qubit index " + std::to_string(out[i]) + " listed twice");
    }
  }
  return out;
}

// Full-register offsets of every assignment to the listed qubits.
std::vector<std::int64_t> scatter_table(const std::vector<int>& qubits, int num_qubits) {
  const int k = static_cast<int>(qubits.size());
  std::vector<std::int64_t> table(std::size_t{1} << k);
  for (std::size_t a = 0; a < table.size(); ++a) {
    std::int64_t full = 0;
    for (int j = 0; j < k; ++j) {
      if ((a >> (k - 1 - j)) & 1U) full |= std::int64_t{1} << (num_qubits - 1 - qubits[j]);
    }
    table[a] = full;
  }
  return table;
}

std::vector<int> complement_of(const std::vector<int>& keep, int num_qubits) {
  std::vector<int> rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) rest.push_back(q);
  }
  return rest;
}

}  // namespace

// ---- composite systems -----------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
  require_within_cap(a.num_qubits() + b.num_qubits(), "tensor");
  CVector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return PureState(unchecked, std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  require_within_cap(a.num_qubits() + b.num_qubits(), "tensor");
  CMatrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityMatrix(unchecked, std::move(m));
}

PureState tensor_power(const PureState& a, int copies) {
  if (copies < 1) throw InvalidArgument("tensor_power needs at least one copy");
  require_within_cap(a.num_qubits() * copies, "tensor_power");
  PureState out = a;
  for (int i = 1; i < copies; ++i) out = tensor(out, a);
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& a, int copies) {
  if (copies < 1) throw InvalidArgument("tensor_power needs at least one copy");
  require_within_cap(a.num_qubits() * copies, "tensor_power");
  DensityMatrix out = a;
  for (int i = 1; i < copies; ++i) out = tensor(out, a);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  const auto kept = sorted_keep(keep, n);
  const auto traced = complement_of(kept, n);
  const auto kept_off = scatter_table(kept, n);
  const auto traced_off = scatter_table(traced, n);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::int64_t t : traced_off) acc += m(kept_off[a] | t, kept_off[b] | t);
      out(a, b) = acc;
    }
  }
  return DensityMatrix(unchecked, std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep) {
  const int n = psi.num_qubits();
  const auto kept = sorted_keep(keep, n);
  const auto traced = complement_of(kept, n);
  const auto kept_off = scatter_table(kept, n);
  const auto traced_off = scatter_table(traced, n);
  CMatrix a(static_cast<Eigen::Index>(kept_off.size()), static_cast<Eigen::Index>(traced_off.size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index t = 0; t < a.cols(); ++t) a(i, t) = psi[kept_off[i] | traced_off[t]];
  }
  CMatrix out = a * a.adjoint();
  return DensityMatrix(unchecked, std::move(out));
}

PureState permute_qubits(const PureState& psi, std::span<const int> order) {
  const int n = psi.num_qubits();
  if (static_cast<int>(order.size()) != n) {
    throw InvalidArgument("qubit permutation has the wrong length");
  }
  std::vector<int> seen(order.begin(), order.end());
  std::sort(seen.begin(), seen.end());
  for (int q = 0; q < n; ++q) {
    if (seen[q] != q) throw InvalidArgument("qubit order is not a permutation");
  }
  CVector out(psi.dim());
  for (std::int64_t i = 0; i < psi.dim(); ++i) {
    std::int64_t j = 0;
    for (int q = 0; q < n; ++q) {
      if ((i >> (n - 1 - order[q])) & 1) j |= std::int64_t{1} << (n - 1 - q);
    }
    out[j] = psi[i];
  }
  return PureState(unchecked, std::move(out));
}

// ---- overlaps and distances ------------------------------------------------

Complex inner(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

double overlap_squared(const PureState& a, const PureState& b) { return std::norm(inner(a, b)); }

double trace_product(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "trace_product");
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum().real();
}

double purity(const DensityMatrix& rho) { return trace_product(rho.matrix(), rho.matrix()); }

double expectation(const DensityMatrix& rho, const CMatrix& observable) {
  return trace_product(rho.matrix(), observable);
}

Eigen::VectorXd eigenvalues(const CMatrix& hermitian) {
  if (hermitian.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double half_trace_norm(const CMatrix& hermitian) {
  return 0.5 * eigenvalues(hermitian).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_distance");
  return std::clamp(half_trace_norm(a.matrix() - b.matrix()), 0.0, 1.0);
}

double trace_distance(const PureState& a, const PureState& b) {
  return std::sqrt(std::max(0.0, 1.0 - overlap_squared(a, b)));
}

CMatrix psd_sqrt(const CMatrix& psd) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(psd);
  Eigen::VectorXd roots = solver.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots[i] = roots[i] > kPsdFloor ? std::sqrt(roots[i]) : 0.0;
  }
  const CMatrix& v = solver.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "fidelity");
  // (Tr sqrt(sqrt(b) a sqrt(b)))^2 equals the squared nuclear norm of sqrt(a) sqrt(b).
  const CMatrix product = psd_sqrt(a.matrix()) * psd_sqrt(b.matrix());
  Eigen::JacobiSVD<CMatrix> svd(product);
  const double nuclear = svd.singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

// ---- spectral tools --------------------------------------------------------

std::vector<EigenPair> spectral_decompose(const HermitianMatrix& h) {
  if (!is_hermitian(h.matrix())) throw NotHermitian("spectral_decompose needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  const auto n = h.dim();
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    CVector v = solver.eigenvectors().col(i);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
    v *= phase;
    v[pivot] = std::abs(v[pivot]);
    out.push_back({solver.eigenvalues()[i], std::move(v)});
  }
  return out;
}

Projector positive_part_projector(const HermitianMatrix& h) {
  if (!is_hermitian(h.matrix())) {
    throw NotHermitian("positive_part_projector needs a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  const auto n = h.dim();
  CMatrix pi = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (solver.eigenvalues()[i] >= -kZeroEigenvalue) {
      const auto v = solver.eigenvectors().col(i);
      pi += v * v.adjoint();
    }
  }
  return Projector(unchecked, std::move(pi));
}

// ---- measurement -----------------------------------------------------------

double swap_test_accept_prob(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "swap_test");
  return std::clamp(0.5 * (1.0 + trace_product(a.matrix(), b.matrix())), 0.5, 1.0);
}

bool swap_test_sample(const DensityMatrix& a, const DensityMatrix& b, Rng& rng) {
  return rng.bernoulli(swap_test_accept_prob(a, b));
}

double outcome_probability(const DensityMatrix& state, const Projector& projector) {
  require_same_dim(state.dim(), projector.dim(), "measure");
  return std::clamp(trace_product(projector.matrix(), state.matrix()), 0.0, 1.0);
}

bool measure(const DensityMatrix& state, const Projector& projector, Rng& rng) {
  return rng.bernoulli(outcome_probability(state, projector));
}

std::int64_t measure_repeated(const DensityMatrix& state, const Projector& projector,
                              std::int64_t shots, Rng& rng) {
  const double p = outcome_probability(state, projector);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < shots; ++s) hits += rng.bernoulli(p) ? 1 : 0;
  return hits;
}

// ---- sampling --------------------------------------------------------------

PureState haar_sample(int num_qubits, Rng& rng) {
  require_within_cap(num_qubits, "haar_sample");
  const auto dim = dimension_of(num_qubits);
  if (dim == 1) return PureState::basis(0, 0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return PureState::normalized(std::move(v));
}

DensityMatrix random_density_matrix(int num_qubits, Rng& rng) {
  const PureState purified = haar_sample(2 * num_qubits, rng);
  std::vector<int> keep(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) keep[static_cast<std::size_t>(q)] = q;
  return partial_trace(purified, keep);
}

CMatrix random_hermitian(std::int64_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  return 0.5 * (g + g.adjoint());
}

}  // namespace qclab
