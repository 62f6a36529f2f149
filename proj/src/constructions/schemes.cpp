#include "qclab/constructions/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {

// ---- fingerprint -----------------------------------------------------------

Fingerprint fingerprint_for(const ToyOwf& owf, double eta, const FingerprintOptions& options) {
  const int ell = owf.output_bits();
  const int m = options.code_length > 0 ? options.code_length : 4 * ell;
  int index_qubits = 0;
  while ((1 << index_qubits) < m) ++index_qubits;
  const int r_max = qubit_cap() / (index_qubits + 1);
  if (r_max < 1) throw CapExceeded("a single fingerprint block exceeds the qubit cap");
  const double target = std::min(11.0 / 12.0, std::pow(eta, 1.0 / r_max));
  Rng search(owf.seed());
  Rng code_rng = search.child("fingerprint-code");
  LinearCode code = build_linear_code(ell, m, options.max_tries, code_rng, target);
  return Fingerprint(std::move(code), eta);
}

OwsgScheme fingerprint_owsg(const ToyOwf& owf, double eta, const FingerprintOptions& options) {
  auto fp = std::make_shared<const Fingerprint>(fingerprint_for(owf, eta, options));
  require_within_cap(fp->total_qubits(), "fingerprint_owsg");
  Json meta = {{"construction", "fingerprint"},
               {"eta", eta},
               {"r", fp->repetitions()},
               {"delta", fp->code().delta()},
               {"d_min", fp->code().d_min()},
               {"code", fp->to_json()},
               {"owf", owf.to_json()}};
  auto table = std::make_shared<const ToyOwf>(owf);
  return OwsgScheme::with_projection_verifier(
      "fingerprint", owf.input_bits(), fp->total_qubits(),
      [fp, table](Key k) { return fp->state((*table)(k)); }, std::move(meta));
}

// ---- phase encoding --------------------------------------------------------

int phase_digit_count(int ell, std::uint64_t lambda) {
  if (lambda < 2) throw InvalidArgument("alphabet size must be at least 2");
  if (ell < 0 || ell > 63) throw InvalidArgument("phase encoding needs 0 <= l <= 63");
  const long double target = std::ldexp(1.0L, ell);
  int t = 0;
  long double power = 1.0L;
  while (power < target) {
    power *= static_cast<long double>(lambda);
    ++t;
  }
  return t;
}

std::vector<std::uint64_t> phase_digits(std::uint64_t y, int ell, std::uint64_t lambda) {
  const int t = phase_digit_count(ell, lambda);
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(t));
  for (int j = t - 1; j >= 0; --j) {
    digits[static_cast<std::size_t>(j)] = y % lambda;
    y /= lambda;
  }
  return digits;
}

double phase_digit_overlap(std::int64_t diff, std::uint64_t lambda) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(diff) / static_cast<double>(lambda);
  return std::abs(Complex(1.0, 0.0) + std::polar(1.0, theta)) / 2.0;
}

OwsgScheme phase_owsg(const ToyOwf& owf, std::uint64_t lambda) {
  const int ell = owf.output_bits();
  const int t = phase_digit_count(ell, lambda);
  require_within_cap(t, "phase_owsg");
  auto table = std::make_shared<const ToyOwf>(owf);
  Json meta = {{"construction", "phase"},
               {"lambda", lambda},
               {"t", t},
               {"embedding", "base-lambda big-endian digits"},
               {"owf", owf.to_json()}};
  return OwsgScheme::with_projection_verifier(
      "phase", owf.input_bits(), t,
      [table, ell, lambda](Key k) {
        const auto digits = phase_digits((*table)(k), ell, lambda);
        CVector v = CVector::Ones(1);
        for (std::uint64_t d : digits) {
          const double theta = 2.0 * std::numbers::pi * static_cast<double>(d) / static_cast<double>(lambda);
          CVector plus(2);
          plus << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), theta);
          CVector next(v.size() * 2);
          for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v[i] * plus;
          v = std::move(next);
        }
        return PureState(unchecked, std::move(v));
      },
      std::move(meta));
}

// ---- PRSG wrapper ----------------------------------------------------------

OwsgScheme prsg_to_owsg(const HaarPrsg& prsg) {
  auto table = std::make_shared<const HaarPrsg>(prsg);
  Json meta = {{"construction", "prsg"},
               {"n", prsg.key_bits()},
               {"m", prsg.output_qubits()},
               {"prsg", prsg.to_json()}};
  return OwsgScheme::with_projection_verifier(
      "haar-prsg", prsg.key_bits(), prsg.output_qubits(),
      [table](Key k) { return table->state(k); }, std::move(meta));
}

double prsg_delta(int n, int m, double h) {
  if (h < 0.0 || h > 1.0) throw InvalidArgument("h must lie in [0, 1]");
  return std::ldexp(std::pow(1.0 - h, std::ldexp(1.0, m) - 1.0), n) + h;
}

// ---- PRG-based EFI and commitment --------------------------------------------

EfiPair prg_efi(const ToyPrg& prg) {
  const int n = prg.seed_bits();
  require_within_cap(2 * n, "prg_efi");
  const auto dim = dimension_of(2 * n);
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim);
  const double weight = std::ldexp(1.0, -n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    p0[static_cast<Eigen::Index>(prg(x))] += weight;
  }
  Json meta = {{"construction", "prg-efi"}, {"n", n}, {"prg", prg.to_json()}};
  return EfiPair("prg-efi", DensityMatrix::diagonal(p0), DensityMatrix::maximally_mixed(2 * n),
                 std::move(meta));
}

CanonicalCommitment prg_commitment(const ToyPrg& prg) {
  const int n = prg.seed_bits();
  const int half = 2 * n;
  require_within_cap(2 * half, "prg_commitment");
  const std::uint64_t dim_c = std::uint64_t{1} << half;
  const std::uint64_t dim = dim_c * dim_c;

  Circuit q0(2 * half);
  for (int q = 0; q < n; ++q) q0.hadamard(q);
  std::vector<std::uint64_t> map0(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t r = i / dim_c;
    const std::uint64_t c = i % dim_c;
    map0[i] = r * dim_c + (c ^ prg(r >> n));
  }
  q0.permute_basis(std::move(map0));

  Circuit q1(2 * half);
  for (int q = 0; q < half; ++q) q1.hadamard(q);
  std::vector<std::uint64_t> map1(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t r = i / dim_c;
    const std::uint64_t c = i % dim_c;
    map1[i] = r * dim_c + (c ^ r);
  }
  q1.permute_basis(std::move(map1));

  Json meta = {{"construction", "prg-commitment"},
               {"n", n},
               {"registers", {{"R", half}, {"C", half}}},
               {"prg", prg.to_json()}};
  return CanonicalCommitment("prg-commitment", half, half, std::move(q0), std::move(q1),
                             std::move(meta));
}

CanonicalCommitment flavor_convert(const CanonicalCommitment& c) {
  const int r = c.reveal_qubits();
  const int cq = c.commit_qubits();
  const int total = r + cq + 1;
  require_within_cap(total, "flavor_convert");

  // Build on (D, R, C), then reorder to (C, R, D).
  std::vector<int> order;
  for (int q = 0; q < cq; ++q) order.push_back(1 + r + q);
  for (int q = 0; q < r; ++q) order.push_back(1 + q);
  order.push_back(0);

  auto build = [&](int b) {
    Circuit circ(total);
    circ.hadamard(0);
    if (b == 1) circ.pauli_z(0);
    circ.multiplex(c.unitary(0), c.unitary(1));
    circ.permute_qubits(order);
    return circ;
  };

  Json meta = {{"construction", "flavor-convert"},
               {"source", c.metadata()},
               {"registers",
                {{"R", {{"qubits", cq}, {"origin", "C"}}},
                 {"C", {{"qubits", r + 1}, {"origin", "R then D"}}}}}};
  return CanonicalCommitment(c.name() + "/converted", cq, r + 1, build(0), build(1),
                             std::move(meta));
}

// ---- QROM fingerprint ------------------------------------------------------

int QromOracle::operator()(std::uint64_t x, std::uint64_t z) const {
  if (constant) return 0;
  return static_cast<int>(splitmix64(seed ^ splitmix64((x << m) | z)) & 1U);
}

PureState qrom_fingerprint(const QromOracle& oracle, std::uint64_t x) {
  require_within_cap(oracle.m, "qrom_fingerprint");
  const auto dim = dimension_of(oracle.m);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  CVector v(dim);
  for (std::int64_t z = 0; z < dim; ++z) {
    v[z] = oracle(x, static_cast<std::uint64_t>(z)) ? -amp : amp;
  }
  return PureState(unchecked, std::move(v));
}

double qrom_overlap(const QromOracle& oracle, std::uint64_t x, std::uint64_t y) {
  const auto dim = dimension_of(oracle.m);
  std::int64_t sum = 0;
  for (std::int64_t z = 0; z < dim; ++z) {
    sum += (oracle(x, static_cast<std::uint64_t>(z)) ^ oracle(y, static_cast<std::uint64_t>(z))) ? -1 : 1;
  }
  return static_cast<double>(sum) / static_cast<double>(dim);
}

QromScan qrom_scan(const QromOracle& oracle) {
  QromScan scan;
  const std::uint64_t count = std::uint64_t{1} << oracle.ell;
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = x + 1; y < count; ++y) {
      const double o = std::abs(qrom_overlap(oracle, x, y));
      ++scan.pairs;
      if (o > scan.max_abs_overlap || scan.pairs == 1) {
        scan.max_abs_overlap = o;
        scan.worst_x = x;
        scan.worst_y = y;
      }
    }
  }
  return scan;
}

}  // namespace qclab
