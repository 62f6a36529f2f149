#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"

namespace qclab {

// ---- composite systems -----------------------------------------------------

/// Kronecker product; `a` occupies the most significant qubits.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_power(const PureState& a, int copies);
DensityMatrix tensor_power(const DensityMatrix& a, int copies);

/// Reduced state on `keep` (qubit 0 is the most significant). Kept qubits
/// appear in ascending order of their original index.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep);

/// New qubit j is old qubit order[j].
PureState permute_qubits(const PureState& psi, std::span<const int> order);

// ---- overlaps and distances ------------------------------------------------

Complex inner(const PureState& a, const PureState& b);
double overlap_squared(const PureState& a, const PureState& b);
/// Real part of Tr(ab).
double trace_product(const CMatrix& a, const CMatrix& b);
double purity(const DensityMatrix& rho);
double expectation(const DensityMatrix& rho, const CMatrix& observable);

/// Half the Schatten-1 norm of a Hermitian matrix: ||X||_tr = (1/2) sum |eig|.
double half_trace_norm(const CMatrix& hermitian);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const PureState& a, const PureState& b);

/// Squared fidelity F = (Tr sqrt(sqrt(s) r sqrt(s)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// ---- spectral tools --------------------------------------------------------

struct EigenPair {
  double value;
  CVector vector;
};

/// Eigenpairs sorted by descending eigenvalue. Each eigenvector's phase is
/// fixed so that its largest-magnitude component is real and positive.
std::vector<EigenPair> spectral_decompose(const HermitianMatrix& h);
Eigen::VectorXd eigenvalues(const CMatrix& hermitian);

/// Projector onto the span of eigenvectors with eigenvalue >= 0. Eigenvalues
/// that are zero up to round-off (|mu| <= kZeroEigenvalue) are included.
Projector positive_part_projector(const HermitianMatrix& h);
inline constexpr double kZeroEigenvalue = 1e-12;

/// Principal square root of a positive semidefinite matrix (negative
/// round-off eigenvalues are clamped to zero).
CMatrix psd_sqrt(const CMatrix& psd);

// ---- measurement -----------------------------------------------------------

/// (1 + Tr(ab)) / 2.
double swap_test_accept_prob(const DensityMatrix& a, const DensityMatrix& b);
bool swap_test_sample(const DensityMatrix& a, const DensityMatrix& b, Rng& rng);

/// Born probability Tr(P rho) clamped to [0, 1].
double outcome_probability(const DensityMatrix& state, const Projector& projector);
/// Returns true ("in the projector") with probability Tr(P rho).
bool measure(const DensityMatrix& state, const Projector& projector, Rng& rng);
/// Number of "in the projector" outcomes over `shots` independent copies.
std::int64_t measure_repeated(const DensityMatrix& state, const Projector& projector,
                              std::int64_t shots, Rng& rng);

// ---- sampling --------------------------------------------------------------

/// Haar-random pure state (normalised complex Gaussian vector).
PureState haar_sample(int num_qubits, Rng& rng);
/// Induced-measure mixed state: partial trace of a Haar state on a doubled
/// register.
DensityMatrix random_density_matrix(int num_qubits, Rng& rng);
/// Hermitian matrix with i.i.d. Gaussian entries (GUE-like), unnormalised.
CMatrix random_hermitian(std::int64_t dim, Rng& rng);

}  // namespace qclab
