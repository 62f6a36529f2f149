#pragma once

#include <cstdint>
#include <vector>

#include "qclab/constructions/code.hpp"
#include "qclab/primitives/backends.hpp"
#include "qclab/primitives/commitment.hpp"
#include "qclab/primitives/efi.hpp"
#include "qclab/primitives/owsg.hpp"

namespace qclab {

// ---- one-way state generators ----------------------------------------------

struct FingerprintOptions {
  /// Code length; 0 means 4 * l.
  int code_length = 0;
  int max_tries = 20000;
};

/// phi_k = |h_{f(k)}>. The code search is seeded from the OWF seed and targets
/// delta < min(11/12, eta^{1/r_max}) where r_max is the largest repetition
/// count that fits the qubit cap.
OwsgScheme fingerprint_owsg(const ToyOwf& owf, double eta, const FingerprintOptions& options = {});
Fingerprint fingerprint_for(const ToyOwf& owf, double eta, const FingerprintOptions& options = {});

/// Base-lambda digits of y, most significant first, t of them where t is the
/// least integer with lambda^t >= 2^l. For lambda a power of two these are the
/// big-endian (log2 lambda)-bit blocks of y.
std::vector<std::uint64_t> phase_digits(std::uint64_t y, int ell, std::uint64_t lambda);
int phase_digit_count(int ell, std::uint64_t lambda);

/// (x)_j |+_{2 pi y_j / lambda}> on t qubits, y = f(k).
OwsgScheme phase_owsg(const ToyOwf& owf, std::uint64_t lambda);
/// |<+_a|+_b>| for digits differing by `diff`: |1 + e^{2 pi i diff/lambda}| / 2.
double phase_digit_overlap(std::int64_t diff, std::uint64_t lambda);

OwsgScheme prsg_to_owsg(const HaarPrsg& prsg);
/// 2^n (1-h)^{2^m - 1} + h.
double prsg_delta(int n, int m, double h);

// ---- EFI pairs and commitments ---------------------------------------------

/// rho_0 = 2^-n sum_x |G(x)><G(x)|, rho_1 = I / 2^{2n}.
EfiPair prg_efi(const ToyPrg& prg);

/// |Psi_0> = 2^{-n/2} sum_x |x 0^n>_R |G(x)>_C and
/// |Psi_1> = 2^{-n} sum_y |y>_R |y>_C with |R| = |C| = 2n.
CanonicalCommitment prg_commitment(const ToyPrg& prg);

/// Q'_b prepares (|0>_D Q_0|0> + (-1)^b |1>_D Q_1|0>) / sqrt 2 and relabels
/// registers so that R' = C and C' = (R, D).
CanonicalCommitment flavor_convert(const CanonicalCommitment& c);

// ---- random-oracle fingerprint ---------------------------------------------

/// Seeded random function H: {0,1}^{l+m} -> {0,1}; `constant` forces H = 0.
struct QromOracle {
  std::uint64_t seed = 0;
  int ell = 0;
  int m = 0;
  bool constant = false;

  int operator()(std::uint64_t x, std::uint64_t z) const;
};

/// 2^{-m/2} sum_z (-1)^{H(x||z)} |z>.
PureState qrom_fingerprint(const QromOracle& oracle, std::uint64_t x);
/// 2^{-m} sum_z (-1)^{H(x||z) xor H(x'||z)}.
double qrom_overlap(const QromOracle& oracle, std::uint64_t x, std::uint64_t y);

struct QromScan {
  double max_abs_overlap = 0.0;
  std::uint64_t worst_x = 0;
  std::uint64_t worst_y = 0;
  std::int64_t pairs = 0;
};
/// Exhaustive scan over all unordered pairs x != x'.
QromScan qrom_scan(const QromOracle& oracle);

}  // namespace qclab
