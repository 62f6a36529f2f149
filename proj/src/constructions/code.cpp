#include "qclab/constructions/code.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {
namespace {

std::uint64_t mask_of(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::string hex_row(std::uint64_t row, int m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llx", (m + 3) / 4, static_cast<unsigned long long>(row));
  return buf;
}

int ceil_log2(std::int64_t x) {
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace

// ---- LinearCode ------------------------------------------------------------

LinearCode::LinearCode(int ell, int m, std::vector<std::uint64_t> rows,
                       std::optional<std::uint64_t> search_seed)
    : ell_(ell), m_(m), rows_(std::move(rows)), seed_(search_seed) {
  if (ell < 1 || ell > kMaxCodeMessageBits) {
    throw ParamTooLarge("code message length must lie in [1, " +
                        std::to_string(kMaxCodeMessageBits) + "]");
  }
  if (m < 1 || m > kMaxCodeLength) {
    throw ParamTooLarge("code length must lie in [1, " + std::to_string(kMaxCodeLength) + "]");
  }
  if (static_cast<int>(rows_.size()) != ell) throw DimensionMismatch("generator needs l rows");
  for (std::uint64_t row : rows_) {
    if (row & ~mask_of(m)) throw InvalidArgument("generator row wider than m bits");
  }
  d_min_ = m;
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << ell); ++x) {
    d_min_ = std::min(d_min_, std::popcount(encode(x)));
  }
}

double LinearCode::delta() const noexcept { return 1.0 - static_cast<double>(d_min_) / m_; }

std::uint64_t LinearCode::encode(std::uint64_t x) const {
  std::uint64_t word = 0;
  for (int j = 0; j < ell_; ++j) {
    if ((x >> (ell_ - 1 - j)) & 1U) word ^= rows_[static_cast<std::size_t>(j)];
  }
  return word;
}

int LinearCode::bit(std::uint64_t codeword, int i) const {
  return static_cast<int>((codeword >> (m_ - 1 - i)) & 1U);
}

int LinearCode::agreement(std::uint64_t x, std::uint64_t y) const {
  return m_ - std::popcount(encode(x) ^ encode(y));
}

Json LinearCode::to_json() const {
  Json rows = Json::array();
  for (std::uint64_t row : rows_) rows.push_back(hex_row(row, m_));
  Json j = {{"ell", ell_}, {"m", m_}, {"generator", rows}, {"d_min", d_min_}, {"delta", delta()}};
  j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  return j;
}

LinearCode LinearCode::from_json(const Json& j) {
  std::vector<std::uint64_t> rows;
  for (const auto& h : j.at("generator")) rows.push_back(std::stoull(h.get<std::string>(), nullptr, 16));
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j["seed"].is_null()) seed = j["seed"].get<std::uint64_t>();
  LinearCode code(j.at("ell").get<int>(), j.at("m").get<int>(), std::move(rows), seed);
  if (j.contains("d_min") && j["d_min"].get<int>() != code.d_min()) {
    throw ConfigError("recorded d_min does not match the generator");
  }
  return code;
}

LinearCode build_linear_code(int ell, int m, int max_tries, Rng& rng, double target_delta) {
  if (max_tries < 1) throw InvalidArgument("max_tries must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < max_tries; ++i) {
    const Rng candidate_rng = rng.child(static_cast<std::uint64_t>(i));
    Rng draw = candidate_rng;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(ell));
    for (auto& row : rows) row = draw.bits(m);
    LinearCode code(ell, m, std::move(rows), candidate_rng.seed());
    if (code.delta() < target_delta) return code;
    best = std::min(best, code.delta());
  }
  throw SearchExhausted("no [" + std::to_string(m) + ", " + std::to_string(ell) +
                            "] code with delta < " + std::to_string(target_delta) + " in " +
                            std::to_string(max_tries) + " tries",
                        best);
}

// ---- Fingerprint -----------------------------------------------------------

int repetitions_for(double delta, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("eta must lie in (0, 1)");
  if (delta <= 0.0) return 1;
  if (delta >= 1.0) throw InvalidArgument("a code with delta = 1 cannot separate messages");
  return static_cast<int>(std::floor(std::log(eta) / std::log(delta))) + 1;
}

Fingerprint::Fingerprint(LinearCode code, double eta)
    : code_(std::move(code)), eta_(eta), r_(repetitions_for(code_.delta(), eta)) {}

int Fingerprint::index_qubits() const noexcept { return ceil_log2(code_.length()); }

double Fingerprint::overlap_bound() const { return std::pow(code_.delta(), r_); }

PureState Fingerprint::block_state(std::uint64_t x) const {
  const int m = code_.length();
  const std::uint64_t word = code_.encode(x);
  CVector v = CVector::Zero(dimension_of(qubits_per_block()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < m; ++i) v[(static_cast<Eigen::Index>(i) << 1) | code_.bit(word, i)] = amp;
  return PureState(unchecked, std::move(v));
}

PureState Fingerprint::state(std::uint64_t x) const {
  require_within_cap(total_qubits(), "fingerprint_state");
  return tensor_power(block_state(x), r_);
}

double Fingerprint::predicted_overlap(std::uint64_t x, std::uint64_t y) const {
  return std::pow(static_cast<double>(code_.agreement(x, y)) / code_.length(), r_);
}

Json Fingerprint::to_json() const {
  Json j = code_.to_json();
  j["r"] = r_;
  j["eta"] = eta_;
  return j;
}

Fingerprint Fingerprint::from_json(const Json& j) {
  Fingerprint f(LinearCode::from_json(j), j.at("eta").get<double>());
  if (j.contains("r") && j["r"].get<int>() != f.r_) {
    throw ConfigError("recorded repetition count does not match delta and eta");
  }
  return f;
}

}  // namespace qclab
