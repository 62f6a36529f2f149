#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

inline constexpr int kMaxCodeMessageBits = 16;
inline constexpr int kMaxCodeLength = 64;

/// Binary linear code E: {0,1}^l -> {0,1}^m given by l generator rows, each
/// an m-bit mask. Message bit j (j = 0 is the most significant) selects row j;
/// codeword bit E_i(x), i = 0..m-1, is bit (m-1-i) of the codeword.
class LinearCode {
 public:
  /// Certifies d_min by enumerating all 2^l - 1 nonzero messages.
  LinearCode(int ell, int m, std::vector<std::uint64_t> rows,
             std::optional<std::uint64_t> search_seed = std::nullopt);

  int message_bits() const noexcept { return ell_; }
  int length() const noexcept { return m_; }
  const std::vector<std::uint64_t>& rows() const noexcept { return rows_; }
  int d_min() const noexcept { return d_min_; }
  /// 1 - d_min/m: the largest fraction of positions two distinct codewords
  /// can agree on.
  double delta() const noexcept;
  std::optional<std::uint64_t> search_seed() const noexcept { return seed_; }

  std::uint64_t encode(std::uint64_t x) const;
  int bit(std::uint64_t codeword, int i) const;
  /// Number of positions where E(x) and E(y) agree.
  int agreement(std::uint64_t x, std::uint64_t y) const;

  Json to_json() const;
  static LinearCode from_json(const Json& j);

 private:
  int ell_;
  int m_;
  std::vector<std::uint64_t> rows_;
  int d_min_ = 0;
  std::optional<std::uint64_t> seed_;
};

/// Draws random generator matrices (candidate i from rng.child(i)) until one
/// has delta < target_delta. Throws SearchExhausted carrying the best delta
/// seen after max_tries candidates.
LinearCode build_linear_code(int ell, int m, int max_tries, Rng& rng,
                             double target_delta = 11.0 / 12.0);

/// |h_x> = ((1/sqrt m) sum_i |i>|E_i(x)>)^{(x) r}, index register padded to
/// ceil(log2 m) qubits.
class Fingerprint {
 public:
  /// r = floor(log eta / log delta) + 1 (r = 1 when delta = 0).
  Fingerprint(LinearCode code, double eta);

  const LinearCode& code() const noexcept { return code_; }
  double eta() const noexcept { return eta_; }
  int repetitions() const noexcept { return r_; }
  int index_qubits() const noexcept;
  int qubits_per_block() const noexcept { return index_qubits() + 1; }
  int total_qubits() const noexcept { return r_ * qubits_per_block(); }
  /// delta^r, the certified bound on |<h_x|h_x'>| for x != x'.
  double overlap_bound() const;

  PureState block_state(std::uint64_t x) const;
  PureState state(std::uint64_t x) const;
  /// (agreement / m)^r from the code alone.
  double predicted_overlap(std::uint64_t x, std::uint64_t y) const;

  Json to_json() const;
  static Fingerprint from_json(const Json& j);

 private:
  LinearCode code_;
  double eta_;
  int r_;
};

int repetitions_for(double delta, double eta);

}  // namespace qclab
