#include "qclab/primitives/commitment.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/SVD>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {
namespace {

std::vector<int> range_of(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

// Coefficient matrix A(r, c) of a state on R (x) C.
CMatrix coefficients(const PureState& psi, int reveal_qubits) {
  const auto dim_r = dimension_of(reveal_qubits);
  const auto dim_c = psi.dim() / dim_r;
  CMatrix a(dim_r, dim_c);
  for (Eigen::Index r = 0; r < dim_r; ++r) {
    for (Eigen::Index c = 0; c < dim_c; ++c) a(r, c) = psi[r * dim_c + c];
  }
  return a;
}

}  // namespace

CanonicalCommitment::CanonicalCommitment(std::string name, int reveal_qubits, int commit_qubits,
                                         Circuit q0, Circuit q1, Json metadata)
    : name_(std::move(name)),
      reveal_qubits_(reveal_qubits),
      commit_qubits_(commit_qubits),
      q0_(std::move(q0)),
      q1_(std::move(q1)),
      metadata_(std::move(metadata)) {
  if (reveal_qubits < 0 || commit_qubits < 1) {
    throw InvalidArgument("commitment registers must be nonnegative and C nonempty");
  }
  if (q0_.num_qubits() != total_qubits() || q1_.num_qubits() != total_qubits()) {
    throw DimensionMismatch("commitment unitaries do not act on R (x) C");
  }
  require_within_cap(total_qubits(), "commitment");
}

const Circuit& CanonicalCommitment::unitary(int b) const {
  if (b != 0 && b != 1) throw InvalidArgument("commitment bit must be 0 or 1");
  return b == 0 ? q0_ : q1_;
}

PureState CanonicalCommitment::honest_state(int b) const { return unitary(b).prepare(); }

DensityMatrix CanonicalCommitment::commit_marginal(int b) const {
  const auto keep = range_of(reveal_qubits_, commit_qubits_);
  return partial_trace(honest_state(b), keep);
}

DensityMatrix CanonicalCommitment::reveal_marginal(int b) const {
  const auto keep = range_of(0, reveal_qubits_);
  return partial_trace(honest_state(b), keep);
}

BindingOptimum honest_binding_optimum(const CanonicalCommitment& c) {
  BindingOptimum out;
  out.fidelity = fidelity(c.commit_marginal(0), c.commit_marginal(1));

  const CMatrix a0 = coefficients(c.honest_state(0), c.reveal_qubits());
  const CMatrix a1 = coefficients(c.honest_state(1), c.reveal_qubits());
  // <Psi_1| (U (x) I) |Psi_0> = Tr(U A_0 A_1^dagger); with A_0 A_1^dagger = P S W^dagger
  // the maximum over unitaries is Tr S, attained at U = W P^dagger.
  const CMatrix x = a0 * a1.adjoint();
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s = svd.singularValues().sum();
  out.uhlmann = std::clamp(s * s, 0.0, 1.0);
  if (c.reveal_qubits() <= 6) out.unitary = CMatrix(svd.matrixV() * svd.matrixU().adjoint());
  return out;
}

PureState apply_on_reveal(const CMatrix& u, const PureState& joint, int reveal_qubits) {
  const auto dim_r = dimension_of(reveal_qubits);
  if (u.rows() != dim_r || u.cols() != dim_r || joint.dim() % dim_r != 0) {
    throw DimensionMismatch("unitary does not match the reveal register");
  }
  const CMatrix a = coefficients(joint, reveal_qubits);
  const CMatrix b = u * a;
  CVector v(joint.dim());
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index col = 0; col < b.cols(); ++col) v[r * b.cols() + col] = b(r, col);
  }
  return PureState(unchecked, std::move(v));
}

double reveal_verify(const CanonicalCommitment& c, int b, const PureState& joint) {
  if (joint.num_qubits() != c.total_qubits()) {
    throw DimensionMismatch("joint state does not live on R (x) C");
  }
  const PureState back = c.unitary(b).apply_adjoint(joint);
  return std::clamp(std::norm(back[0]), 0.0, 1.0);
}

double reveal_verify(const CanonicalCommitment& c, int b, const DensityMatrix& joint) {
  if (joint.num_qubits() != c.total_qubits()) {
    throw DimensionMismatch("joint state does not live on R (x) C");
  }
  const CVector psi = c.honest_state(b).amplitudes();
  return std::clamp(psi.dot(joint.matrix() * psi).real(), 0.0, 1.0);
}

EfiPair commit_marginals(const CanonicalCommitment& c) {
  return EfiPair(c.name() + "/commit-marginals", c.commit_marginal(0), c.commit_marginal(1));
}

GameReport hiding_advantage(const CanonicalCommitment& c, const Distinguisher& distinguisher,
                            std::int64_t trials_per_arm, Rng& rng, Scoring scoring) {
  GameReport report = run_efi_game(commit_marginals(c), distinguisher, trials_per_arm, rng, scoring);
  report.game = "hiding";
  return report;
}

}  // namespace qclab
