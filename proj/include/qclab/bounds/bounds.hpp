#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

/// One numerical inequality instance. margin is lhs - rhs for ">=", rhs - lhs
/// for "<=" and -|lhs - rhs| for "=="; holds iff margin >= -tolerance.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation = "<=";
  double margin = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  /// Enough data to recompute lhs and rhs; witness["check"] names the kind.
  Json witness = Json::object();

  Json to_json() const;
};

BoundCheck make_check(std::string name, double lhs, const std::string& relation, double rhs,
                      double tolerance, Json witness);

/// Recomputes lhs and rhs from a check's witness.
BoundCheck recompute(const BoundCheck& check);

/// Summary over a sweep: lhs is the smallest margin, rhs is -tolerance.
/// The witness lists every margin so the summary can be recomputed.
BoundCheck aggregate(std::string name, const std::vector<BoundCheck>& checks, double tolerance);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// Welch bound. k = 1: E_{i,j~dist} |<phi_i|phi_j>|^2 >= 1/d. k = 2, 3:
/// C(d+k-1, k) sum_{ij} |<psi_i|psi_j>|^{2k} >= (sum_i <psi_i|psi_i>^k)^2 with
/// psi_i = sqrt(p_i) phi_i. Throws BadDistribution for an invalid dist.
BoundCheck welch_check(const std::vector<PureState>& states, const Eigen::VectorXd& dist, int k = 1,
                       double tolerance = 1e-9);
/// Random ensembles with d in {2, 4, 8}, up to 16 states, random weights;
/// instance i uses rng.child(i).
std::vector<BoundCheck> welch_sweep(std::int64_t instances, Rng& rng, int k = 1);

/// Empirical Pr[|<psi|0>|^2 >= h] over Haar psi against (1 - h)^{2^m - 1},
/// with 3 sigma binomial slack. Requires samples >= 10^4.
BoundCheck haar_concentration_check(int m, double h, std::int64_t samples, Rng& rng);

/// Tr(rho sigma) <= F(rho, sigma).
BoundCheck trf_check(const DensityMatrix& rho, const DensityMatrix& sigma, double tolerance = 1e-9);
std::vector<BoundCheck> trf_sweep(std::int64_t instances, int num_qubits, Rng& rng);

/// F(2^{-n} sum_k |psi_k><psi_k|, I/2^m) <= 2^{n-m}.
BoundCheck fidelity_mix_check(const std::vector<PureState>& states, double tolerance = 1e-9);
/// Draws 2^n Haar states on m qubits; requires n <= m + 4.
BoundCheck fidelity_mix_check(int n, int m, Rng& rng);

/// For Hermitian A, B and a projector P:
///   Tr(P+ (A - B)) == ||A - B||_tr + Tr(A - B)/2 with P+ the positive part,
///   Tr(P (A - B)) <= Tr(P+ (A - B)),
///   |Tr(P (A - B))| <= 2 ||A - B||_tr.
std::vector<BoundCheck> projector_td_check(const CMatrix& a, const CMatrix& b,
                                           const CMatrix& projector, double tolerance = 1e-9);
/// Random projector of rank in [0, dim] with a Haar-random basis.
Projector random_projector(std::int64_t dim, Rng& rng);
/// Random (A, B, P) triples: 3 checks per instance.
std::vector<BoundCheck> projector_td_sweep(std::int64_t instances, int num_qubits, Rng& rng);

}  // namespace qclab
