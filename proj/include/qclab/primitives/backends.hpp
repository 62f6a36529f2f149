#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

// Seeded toy stand-ins for OWFs, PRGs and PRSGs. Each object is a
// deterministic function of its descriptor {kind, n, ell|m, seed, flags};
// from_json rebuilds the table from the seed and checks the recorded flags.

inline constexpr int kMaxOwfInputBits = 20;
inline constexpr int kMaxPrgSeedBits = 16;

class ToyOwf {
 public:
  /// kind: "random_table", "random_injection" (needs ell >= n) or "arx".
  ToyOwf(std::string kind, int n, int ell, std::uint64_t seed);

  const std::string& kind() const noexcept { return kind_; }
  int input_bits() const noexcept { return n_; }
  int output_bits() const noexcept { return ell_; }
  std::uint64_t seed() const noexcept { return seed_; }
  /// Exhaustively checked at construction.
  bool injective() const noexcept { return injective_; }
  const std::vector<std::uint64_t>& table() const noexcept { return table_; }

  std::uint64_t operator()(std::uint64_t x) const;

  Json to_json() const;
  static ToyOwf from_json(const Json& j);

 private:
  std::string kind_;
  int n_;
  int ell_;
  std::uint64_t seed_;
  bool injective_ = false;
  std::vector<std::uint64_t> table_;
};

class ToyPrg {
 public:
  /// kind: "random_injection" (default) or "identity" with G(x) = x || x.
  ToyPrg(std::string kind, int n, std::uint64_t seed);

  const std::string& kind() const noexcept { return kind_; }
  int seed_bits() const noexcept { return n_; }
  int output_bits() const noexcept { return 2 * n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool injective() const noexcept { return injective_; }

  std::uint64_t operator()(std::uint64_t x) const;

  Json to_json() const;
  static ToyPrg from_json(const Json& j);

 private:
  std::string kind_;
  int n_;
  std::uint64_t seed_;
  bool injective_ = false;
  std::vector<std::uint64_t> table_;
};

/// Idealised PRSG: key k gets an independently Haar-sampled m-qubit state
/// drawn from Rng(seed).child(k).
class HaarPrsg {
 public:
  HaarPrsg(int n, int m, std::uint64_t seed);

  int key_bits() const noexcept { return n_; }
  int output_qubits() const noexcept { return m_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const PureState& state(std::uint64_t key) const;
  const std::vector<PureState>& states() const noexcept { return states_; }

  Json to_json() const;
  static HaarPrsg from_json(const Json& j);

 private:
  int n_;
  int m_;
  std::uint64_t seed_;
  std::vector<PureState> states_;
};

ToyOwf make_toy_owf(const std::string& kind, int n, int ell, Rng& rng);
ToyPrg make_toy_prg(int n, Rng& rng, const std::string& kind = "random_injection");
HaarPrsg make_haar_prsg(int n, int m, Rng& rng);

}  // namespace qclab
